#include "pjet/poly.hpp"

#include <cctype>
#include <sstream>

namespace pjet {

// ---------------------------------------------------------------------------
// printer
// ---------------------------------------------------------------------------

namespace {

// coefficient + monomial -> "3*p^-2*x'^2*y", omitting redundant 1 factors
std::string term_string(const JetVarSet& vars, const Mono& m, const Rat& c_abs) {
    std::ostringstream os;
    Int num = rat_num(c_abs), den = rat_den(c_abs);
    bool have_mono = false;
    for (auto e : m)
        if (e != 0) have_mono = true;

    long k = 0;
    Int d = den;
    Int p(vars.p());
    while (d % p == 0) { d /= p; ++k; }
    const bool p_power_den = (den != 1 && d == 1);

    bool coef_printed = false;
    if (num != 1 || (!have_mono && den == 1) || (den != 1 && !p_power_den)) {
        os << num;
        coef_printed = true;
    }
    if (den != 1) {
        if (p_power_den) {
            if (coef_printed) os << "*";
            os << "p^-" << k;
        } else {
            // general denominator (series layers); parser accepts '/'
            os << "/" << den;
        }
        coef_printed = true;
    }
    for (int v = 0; v < (int)m.size(); ++v) {
        if (m[v] == 0) continue;
        if (coef_printed || os.tellp() > 0) os << "*";
        os << vars.var_name(v);
        if (m[v] != 1) os << "^" << m[v];
        coef_printed = true;
    }
    return os.str();
}

} // namespace

std::string print_poly(const DeltaPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending canonical order
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const Rat& c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        os << term_string(*f.vars(), it->first, neg ? Rat(-c) : c);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        return s[i++];
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw ParseError("expected integer", start);
        return Int(s.substr(start, i - start));
    }
    long signed_int() {
        skip_ws();
        bool neg = accept('-');
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw ParseError("expected exponent", start);
        long v = std::stol(s.substr(start, i - start));
        return neg ? -v : v;
    }
    std::string name() {
        skip_ws();
        size_t start = i;
        if (i >= s.size() || !(std::isalpha((unsigned char)s[i]) || s[i] == '_'))
            throw ParseError("expected identifier", i);
        while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
        return s.substr(start, i - start);
    }
};

} // namespace

DeltaPoly parse_poly(const VarsPtr& vars, const std::string& text) {
    Lexer lx{text};
    DeltaPoly out(vars);
    bool first_term = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('-')) {
            sign = -1;
        } else if (lx.accept('+')) {
            if (first_term) throw ParseError("unexpected leading '+'", lx.i - 1);
        } else if (!first_term) {
            throw ParseError("expected '+' or '-' between terms", lx.i);
        }
        first_term = false;

        Rat coef = sign;
        Mono mono(vars->nvars(), 0);
        bool expect_factor = true;
        while (expect_factor) {
            char c = lx.peek();
            if (std::isdigit((unsigned char)c)) {
                coef *= Rat(lx.integer());
            } else if (std::isalpha((unsigned char)c) || c == '_') {
                size_t name_pos = lx.i;
                std::string n = lx.name();
                if (n == "p") {
                    long e = 1;
                    if (lx.accept('^')) e = lx.signed_int();
                    Rat pw(int_pow(Int(vars->p()), (unsigned long)(e < 0 ? -e : e)));
                    coef *= (e < 0) ? Rat(1) / pw : pw;
                } else {
                    auto bi = vars->find_base(n);
                    if (!bi) throw ParseError("unknown variable '" + n + "'", name_pos);
                    int order = 0;
                    while (lx.peek() == '\'') {
                        lx.take();
                        ++order;
                    }
                    long exp = 1;
                    if (lx.accept('^')) {
                        if (lx.accept('(')) {
                            if (order != 0)
                                throw ParseError("mixed prime and ^(j) order marks", lx.i);
                            order = (int)lx.signed_int();
                            if (!lx.accept(')')) throw ParseError("expected ')'", lx.i);
                            if (lx.accept('^')) exp = lx.signed_int();
                        } else {
                            exp = lx.signed_int();
                        }
                    }
                    if (order < 0 || order > vars->max_order())
                        throw ParseError("jet order out of range", name_pos);
                    mono[vars->index(*bi, order)] += (int32_t)exp;
                }
            } else {
                throw ParseError("expected factor", lx.i);
            }
            if (lx.accept('*')) {
                expect_factor = true;
            } else if (lx.accept('/')) {
                Int d = lx.integer();
                if (d == 0) throw ParseError("division by zero", lx.i);
                coef /= Rat(d);
                expect_factor = !lx.eof() && lx.accept('*');
            } else {
                expect_factor = false;
            }
        }
        out.add_term(mono, coef);
    }
    return out;
}

} // namespace pjet
