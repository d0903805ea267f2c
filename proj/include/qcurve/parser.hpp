#ifndef QCURVE_PARSER_HPP
#define QCURVE_PARSER_HPP

/* Expression parser and printer for curve definitions.  Grammar (documented
 * in the README):
 *
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := base ('^' ['-'] integer)?
 *   base   := integer | name | 'log' '(' expr ')' | '(' expr ')'
 *
 * One free parameter per expression; any other name must be a bound
 * constant.  The printer emits the same grammar.
 */

#include "qcurve/logaug.hpp"

#include <map>
#include <string>

namespace qcurve {

struct ParseError : MathError {
    ParseError(const std::string& msg, size_t offset)
        : MathError(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    size_t offset() const { return offset_; }

  private:
    size_t offset_;
};

LogAugmented parse_expr(const std::string& text, const std::string& parameter,
                        const std::map<std::string, FieldElement>& constants = {});

std::string print_polynomial(const PolyQ& p, const std::string& parameter);
std::string print_rational(const RatQ& f, const std::string& parameter);
std::string print_logaug(const LogAugmented& f, const std::string& parameter);

} // namespace qcurve

#endif
