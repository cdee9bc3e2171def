#include "schwarz/expr.hpp"

#include <cctype>
#include <numeric>

namespace schwarz {

namespace {

struct Token {
    enum class Kind { Num, Ident, Op, End } kind = Kind::End;
    std::string text;
    int line = 0, col = 0;
};

class Lexer {
  public:
    Lexer(const std::string& s, int line_offset) : s_(s), line_(line_offset) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= s_.size()) return t;
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Num;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) take(t);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Ident;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                take(t);
            return t;
        }
        if (std::string("+-*/^()[],").find(c) != std::string::npos) {
            t.kind = Token::Kind::Op;
            take(t);
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

  private:
    void take(Token& t) {
        t.text += s_[pos_++];
        ++col_;
    }
    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    const std::string& s_;
    size_t pos_ = 0;
    int line_, col_ = 1;
};

class Parser {
  public:
    Parser(const std::string& s, int line_offset) : lex_(s, line_offset) { advance(); }

    ExprPtr expression() {
        ExprPtr e = term();
        while (is_op("+") || is_op("-")) {
            bool plus = is_op("+");
            Token op = cur_;
            advance();
            ExprPtr rhs = term();
            e = binary(plus ? Expr::Kind::Add : Expr::Kind::Sub, std::move(e), std::move(rhs), op);
        }
        return e;
    }

    std::vector<std::vector<ExprPtr>> matrix() {
        expect_op("[");
        std::vector<std::vector<ExprPtr>> rows;
        for (;;) {
            expect_op("[");
            std::vector<ExprPtr> row;
            for (;;) {
                row.push_back(expression());
                if (is_op(",")) {
                    advance();
                    continue;
                }
                break;
            }
            expect_op("]");
            rows.push_back(std::move(row));
            if (is_op(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_op("]");
        return rows;
    }

    void expect_end() {
        if (cur_.kind != Token::Kind::End)
            throw ParseError("trailing input '" + cur_.text + "'", cur_.line, cur_.col);
    }

  private:
    ExprPtr term() {
        ExprPtr e = factor();
        while (is_op("*") || is_op("/")) {
            bool mul = is_op("*");
            Token op = cur_;
            advance();
            ExprPtr rhs = factor();
            e = binary(mul ? Expr::Kind::Mul : Expr::Kind::Div, std::move(e), std::move(rhs), op);
        }
        return e;
    }

    ExprPtr factor() {
        if (is_op("-")) {
            Token op = cur_;
            advance();
            ExprPtr k = factor();
            ExprPtr e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Neg;
            e->line = op.line, e->col = op.col;
            e->kids.push_back(std::move(k));
            return e;
        }
        if (is_op("+")) {
            advance();
            return factor();
        }
        ExprPtr base = primary();
        if (is_op("^")) {
            Token op = cur_;
            advance();
            Rat ex = exponent_literal();
            ExprPtr e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Pow;
            e->exponent = ex;
            e->line = op.line, e->col = op.col;
            e->kids.push_back(std::move(base));
            return e;
        }
        return base;
    }

    ExprPtr primary() {
        if (cur_.kind == Token::Kind::Num) {
            ExprPtr e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Num;
            e->value = Rat::from_string(cur_.text);
            e->line = cur_.line, e->col = cur_.col;
            advance();
            return e;
        }
        if (cur_.kind == Token::Kind::Ident) {
            ExprPtr e = std::make_unique<Expr>();
            e->kind = Expr::Kind::Var;
            e->name = cur_.text;
            e->line = cur_.line, e->col = cur_.col;
            advance();
            return e;
        }
        if (is_op("(")) {
            advance();
            ExprPtr e = expression();
            expect_op(")");
            return e;
        }
        throw ParseError("expected a number, name or '('", cur_.line, cur_.col);
    }

    // integer, or (p/q) possibly signed
    Rat exponent_literal() {
        int sign = 1;
        bool parens = false;
        if (is_op("(")) {
            parens = true;
            advance();
        }
        if (is_op("-")) {
            sign = -1;
            advance();
        }
        if (cur_.kind != Token::Kind::Num)
            throw ParseError("exponent must be an integer or rational literal", cur_.line,
                             cur_.col);
        Rat num = Rat::from_string(cur_.text);
        advance();
        Rat result = num;
        if (parens && is_op("/")) {
            advance();
            if (cur_.kind != Token::Kind::Num)
                throw ParseError("expected denominator in rational exponent", cur_.line, cur_.col);
            Rat den = Rat::from_string(cur_.text);
            advance();
            if (den.is_zero()) throw ParseError("zero denominator in exponent", cur_.line, cur_.col);
            result = num / den;
        }
        if (parens) expect_op(")");
        return sign < 0 ? -result : result;
    }

    ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b, const Token& op) {
        ExprPtr e = std::make_unique<Expr>();
        e->kind = k;
        e->line = op.line, e->col = op.col;
        e->kids.push_back(std::move(a));
        e->kids.push_back(std::move(b));
        return e;
    }

    bool is_op(const char* s) const { return cur_.kind == Token::Kind::Op && cur_.text == s; }
    void expect_op(const char* s) {
        if (!is_op(s))
            throw ParseError(std::string("expected '") + s + "'", cur_.line, cur_.col);
        advance();
    }
    void advance() { cur_ = lex_.next(); }

    Lexer lex_;
    Token cur_;
};

long rat_to_long(const Rat& r, const Expr& e, const char* what) {
    if (!r.is_integer()) throw ParseError(std::string(what) + " must be an integer", e.line, e.col);
    if (!r.num().fits_slong_p())
        throw ParseError(std::string(what) + " out of range", e.line, e.col);
    return r.num().get_si();
}

// ---- function evaluation ----------------------------------------------------

// collect lcm of exponent denominators of z and the parameter (with sign)
struct RamScan {
    long z_den = 1;
    ParamInfo* param = nullptr;
};

void scan(const Expr& e, RamScan& rs) {
    if (e.kind == Expr::Kind::Pow) {
        const Expr& base = *e.kids[0];
        long den = e.exponent.den().get_si();
        if (base.kind == Expr::Kind::Var && base.name == "z") {
            rs.z_den = std::lcm(rs.z_den, den);
        } else if (rs.param && base.kind == Expr::Kind::Var && base.name == rs.param->name) {
            if (den > 1) {
                if (rs.param->used && rs.param->sign != 1)
                    throw ParseError("mixed sign conventions for fractional powers of '" +
                                         base.name + "'",
                                     e.line, e.col);
                rs.param->sign = 1;
                rs.param->used = true;
                rs.param->q = static_cast<int>(std::lcm<long>(rs.param->q, den));
            }
        } else if (rs.param && base.kind == Expr::Kind::Neg &&
                   base.kids[0]->kind == Expr::Kind::Var &&
                   base.kids[0]->name == rs.param->name) {
            if (den > 1) {
                if (rs.param->used && rs.param->sign != -1)
                    throw ParseError("mixed sign conventions for fractional powers of '" +
                                         rs.param->name + "'",
                                     e.line, e.col);
                rs.param->sign = -1;
                rs.param->used = true;
                rs.param->q = static_cast<int>(std::lcm<long>(rs.param->q, den));
            }
        } else if (den > 1) {
            throw ParseError("fractional powers are supported only for z and declared parameters",
                             e.line, e.col);
        }
    }
    for (const auto& k : e.kids) scan(*k, rs);
}

template <class F>
Ram<F> eval_fun(const Expr& e, int r, const ParamInfo* param, const F& param_value) {
    using K = Ram<F>;
    switch (e.kind) {
        case Expr::Kind::Num:
            return K::from_rat(e.value);
        case Expr::Kind::Var:
            if (e.name == "z") return K(r, RatFun<F>(UPoly<F>::x(r)));
            if (param && e.name == param->name) {
                F v = param_value;
                // param = sign * s^q
                for (int i = 1; i < param->q; ++i) v = v * param_value;
                if (param->sign < 0) v = -v;
                return K(v);
            }
            throw ParseError("unknown name '" + e.name + "' in a function of z", e.line, e.col);
        case Expr::Kind::Add:
            return eval_fun(*e.kids[0], r, param, param_value) +
                   eval_fun(*e.kids[1], r, param, param_value);
        case Expr::Kind::Sub:
            return eval_fun(*e.kids[0], r, param, param_value) -
                   eval_fun(*e.kids[1], r, param, param_value);
        case Expr::Kind::Mul:
            return eval_fun(*e.kids[0], r, param, param_value) *
                   eval_fun(*e.kids[1], r, param, param_value);
        case Expr::Kind::Div: {
            K den = eval_fun(*e.kids[1], r, param, param_value);
            if (den.is_zero())
                throw ParseError("division by zero in expression", e.line, e.col);
            return eval_fun(*e.kids[0], r, param, param_value) / den;
        }
        case Expr::Kind::Neg:
            return -eval_fun(*e.kids[0], r, param, param_value);
        case Expr::Kind::Pow: {
            const Expr& base = *e.kids[0];
            const Rat& q = e.exponent;
            // fractional powers: z or the (+-)parameter
            if (base.kind == Expr::Kind::Var && base.name == "z") {
                Rat scaled = q * Rat(static_cast<long>(r));
                long k = rat_to_long(scaled, e, "scaled exponent");
                if (k >= 0) return K(r, RatFun<F>(UPoly<F>::x(static_cast<int>(k))));
                return K(r, RatFun<F>(UPoly<F>::one(), UPoly<F>::x(static_cast<int>(-k))));
            }
            bool neg_param = param && base.kind == Expr::Kind::Neg &&
                             base.kids[0]->kind == Expr::Kind::Var &&
                             base.kids[0]->name == param->name;
            bool pos_param = param && base.kind == Expr::Kind::Var && base.name == param->name;
            if ((neg_param || pos_param) && !q.is_integer()) {
                // (sign*param)^q = s^{q * q_param}; the scan fixed q_param and sign
                Rat scaled = q * Rat(static_cast<long>(param->q));
                long k = rat_to_long(scaled, e, "scaled parameter exponent");
                F v = F::one();
                F inv = F::one() / param_value;
                const F& step = k >= 0 ? param_value : inv;
                for (long i = 0; i < (k >= 0 ? k : -k); ++i) v = v * step;
                bool flip = (neg_param && param->sign > 0) || (pos_param && param->sign < 0);
                if (flip)
                    throw ParseError("mixed sign conventions for fractional powers of '" +
                                         param->name + "'",
                                     e.line, e.col);
                return K(v);
            }
            long k = rat_to_long(q, e, "exponent");
            K b = eval_fun(base, r, param, param_value);
            if (k < 0) {
                if (b.is_zero()) throw ParseError("zero to a negative power", e.line, e.col);
                b = b.inverse();
                k = -k;
            }
            K out = K::one();
            for (long i = 0; i < k; ++i) out = out * b;
            return out;
        }
    }
    throw ParseError("malformed expression tree", e.line, e.col);
}

}  // namespace

ExprPtr parse_expression(const std::string& text, int line_offset) {
    Parser p(text, line_offset);
    ExprPtr e = p.expression();
    p.expect_end();
    return e;
}

std::vector<std::vector<ExprPtr>> parse_matrix(const std::string& text, int line_offset) {
    Parser p(text, line_offset);
    auto m = p.matrix();
    p.expect_end();
    return m;
}

void infer_param_ramification(const Expr& e, ParamInfo& param) {
    RamScan rs;
    rs.param = &param;
    scan(e, rs);
}

Ram<Rat> eval_function(const Expr& e) {
    RamScan rs;
    scan(e, rs);
    return eval_fun<Rat>(e, static_cast<int>(rs.z_den), nullptr, Rat()).reduced();
}

Ram<RatFun<Rat>> eval_function_param(const Expr& e, ParamInfo& param) {
    RamScan rs;
    rs.param = &param;
    scan(e, rs);
    RatFun<Rat> s = RatFun<Rat>::x();
    return eval_fun<RatFun<Rat>>(e, static_cast<int>(rs.z_den), &param, s);
}

MPoly<Rat> eval_polynomial(const Expr& e, const std::vector<std::string>& vars) {
    const int n = static_cast<int>(vars.size());
    switch (e.kind) {
        case Expr::Kind::Num:
            return MPoly<Rat>::from_rat(n, e.value);
        case Expr::Kind::Var: {
            for (int i = 0; i < n; ++i)
                if (vars[i] == e.name) return MPoly<Rat>::variable(n, i);
            throw ParseError("unknown variable '" + e.name + "'", e.line, e.col);
        }
        case Expr::Kind::Add:
            return eval_polynomial(*e.kids[0], vars) + eval_polynomial(*e.kids[1], vars);
        case Expr::Kind::Sub:
            return eval_polynomial(*e.kids[0], vars) - eval_polynomial(*e.kids[1], vars);
        case Expr::Kind::Mul:
            return eval_polynomial(*e.kids[0], vars) * eval_polynomial(*e.kids[1], vars);
        case Expr::Kind::Div: {
            MPoly<Rat> den = eval_polynomial(*e.kids[1], vars);
            if (!den.is_constant())
                throw ParseError("polynomial division only by constants", e.line, e.col);
            Rat c = den.constant_value();
            if (c.is_zero()) throw ParseError("division by zero", e.line, e.col);
            return eval_polynomial(*e.kids[0], vars).scaled_rat(c.inverse());
        }
        case Expr::Kind::Neg:
            return -eval_polynomial(*e.kids[0], vars);
        case Expr::Kind::Pow: {
            long k = rat_to_long(e.exponent, e, "polynomial exponent");
            if (k < 0) throw ParseError("negative power of a polynomial", e.line, e.col);
            return eval_polynomial(*e.kids[0], vars).pow(static_cast<int>(k));
        }
    }
    throw ParseError("malformed expression tree", e.line, e.col);
}

CycNum eval_cyclotomic(const Expr& e, int conductor) {
    switch (e.kind) {
        case Expr::Kind::Num:
            return CycNum(e.value);
        case Expr::Kind::Var: {
            std::string zn = "zeta_" + std::to_string(conductor);
            if (e.name == "zeta" || e.name == zn) return CycNum::zeta(conductor);
            throw ParseError("unknown name '" + e.name + "' (expected " + zn + ")", e.line,
                             e.col);
        }
        case Expr::Kind::Add:
            return eval_cyclotomic(*e.kids[0], conductor) + eval_cyclotomic(*e.kids[1], conductor);
        case Expr::Kind::Sub:
            return eval_cyclotomic(*e.kids[0], conductor) - eval_cyclotomic(*e.kids[1], conductor);
        case Expr::Kind::Mul:
            return eval_cyclotomic(*e.kids[0], conductor) * eval_cyclotomic(*e.kids[1], conductor);
        case Expr::Kind::Div: {
            CycNum d = eval_cyclotomic(*e.kids[1], conductor);
            if (d.is_zero()) throw ParseError("division by zero", e.line, e.col);
            return eval_cyclotomic(*e.kids[0], conductor) / d;
        }
        case Expr::Kind::Neg:
            return -eval_cyclotomic(*e.kids[0], conductor);
        case Expr::Kind::Pow: {
            long k = rat_to_long(e.exponent, e, "exponent");
            return eval_cyclotomic(*e.kids[0], conductor).pow(k);
        }
    }
    throw ParseError("malformed expression tree", e.line, e.col);
}

}  // namespace schwarz
