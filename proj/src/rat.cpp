#include "symfi/rat.hpp"

#include "symfi/errors.hpp"

namespace symfi {

std::string rat_to_string(const Rat &a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

Rat rat_from_string(const std::string &s) {
    if (s.empty()) throw error("empty rational literal");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw error("bad rational literal: '" + s + "'");
    r.canonicalize();
    if (r.get_den() <= 0) throw error("bad rational literal (zero denominator): '" + s + "'");
    return r;
}

} // namespace symfi
