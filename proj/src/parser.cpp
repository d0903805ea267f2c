#include "qcurve/parser.hpp"

#include <cctype>
#include <sstream>

namespace qcurve {

namespace {

struct Token {
    enum Kind { Number, Name, Log, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            std::string name = s.substr(i, j - i);
            out.push_back({name == "log" ? Token::Log : Token::Name, name, i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '/': k = Token::Slash; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
  public:
    Parser(const std::string& text, const std::string& parameter,
           const std::map<std::string, FieldElement>& constants)
        : toks_(tokenize(text)), param_(parameter), consts_(constants) {}

    LogAugmented run() {
        LogAugmented v = expr();
        expect(Token::End, "trailing input");
        return v;
    }

  private:
    const Token& peek() const { return toks_[i_]; }
    Token take() { return toks_[i_++]; }
    void expect(Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    }

    LogAugmented expr() {
        bool neg = false;
        if (peek().kind == Token::Minus) {
            take();
            neg = true;
        }
        LogAugmented v = term();
        if (neg) v = -v;
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            Token op = take();
            LogAugmented rhs = term();
            v = op.kind == Token::Plus ? v + rhs : v - rhs;
        }
        return v;
    }

    LogAugmented term() {
        LogAugmented v = factor();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            Token op = take();
            LogAugmented rhs = factor();
            if (op.kind == Token::Star) {
                if (v.has_logs() && rhs.has_logs())
                    throw ParseError("product of two log expressions", op.pos);
                v = v * rhs;
            } else {
                if (rhs.has_logs()) throw ParseError("division by a log expression", op.pos);
                if (rhs.rational_part().is_zero())
                    throw ParseError("division by the zero polynomial", op.pos);
                v = v / rhs.rational_part();
            }
        }
        return v;
    }

    LogAugmented factor() {
        LogAugmented v = base();
        if (peek().kind == Token::Caret) {
            Token op = take();
            long sign = 1;
            if (peek().kind == Token::Minus) {
                take();
                sign = -1;
            }
            expect(Token::Number, "integer exponent");
            Token e = take();
            long exp = sign * std::stol(e.text);
            if (v.has_logs()) {
                if (exp == 1) return v;
                throw ParseError("power of a log expression", op.pos);
            }
            if (exp < 0 && v.rational_part().is_zero())
                throw ParseError("division by the zero polynomial", op.pos);
            v = LogAugmented(v.rational_part().pow(exp));
        }
        return v;
    }

    LogAugmented base() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number: {
                take();
                mpq_class q(t.text);
                return LogAugmented(FieldElement(q));
            }
            case Token::Name: {
                take();
                if (t.text == param_) return LogAugmented(RatQ::variable());
                auto it = consts_.find(t.text);
                if (it == consts_.end())
                    throw ParseError("unknown name '" + t.text + "'", t.pos);
                return LogAugmented(it->second);
            }
            case Token::Log: {
                take();
                expect(Token::LParen, "'(' after log");
                take();
                LogAugmented inner = expr();
                expect(Token::RParen, "')'");
                take();
                if (inner.has_logs()) throw ParseError("nested log", t.pos);
                if (inner.rational_part().is_constant())
                    throw ParseError("log of a constant", t.pos);
                return LogAugmented::log_of(inner.rational_part());
            }
            case Token::LParen: {
                take();
                LogAugmented inner = expr();
                expect(Token::RParen, "')'");
                take();
                return inner;
            }
            default: throw ParseError("expected a value", t.pos);
        }
    }

    std::vector<Token> toks_;
    size_t i_ = 0;
    std::string param_;
    std::map<std::string, FieldElement> consts_;
};

// prints a nonzero monomial |c| * z^i (absolute value of coefficient)
std::string print_monomial(const FieldElement& c, int i, const std::string& var) {
    if (!c.is_rational())
        throw MathError("printer: cannot print extension-field coefficient in expression grammar");
    mpq_class q = abs(c.to_mpq());
    std::ostringstream os;
    bool unit = (q == 1);
    if (!unit || i == 0) {
        os << q.get_num().get_str();
        if (q.get_den() != 1) os << "/" << q.get_den().get_str();
    }
    if (i > 0) {
        if (!unit) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

} // namespace

LogAugmented parse_expr(const std::string& text, const std::string& parameter,
                        const std::map<std::string, FieldElement>& constants) {
    return Parser(text, parameter, constants).run();
}

std::string print_polynomial(const PolyQ& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const FieldElement& c = p[i];
        if (c.is_zero()) continue;
        bool neg = c.to_mpq() < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        os << print_monomial(c, i, var);
    }
    return os.str();
}

std::string print_rational(const RatQ& f, const std::string& var) {
    if (f.is_polynomial()) return print_polynomial(f.num(), var);
    std::ostringstream os;
    os << "(" << print_polynomial(f.num(), var) << ")/(" << print_polynomial(f.den(), var) << ")";
    return os.str();
}

std::string print_logaug(const LogAugmented& f, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    if (!f.rational_part().is_zero() || f.log_terms().empty()) {
        os << print_rational(f.rational_part(), var);
        first = false;
    }
    for (const auto& t : f.log_terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << print_rational(t.coeff, var) << ")*log(" << print_rational(t.arg, var) << ")";
    }
    return os.str();
}

} // namespace qcurve
