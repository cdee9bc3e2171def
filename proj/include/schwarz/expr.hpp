#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schwarz/cyclotomic.hpp"
#include "schwarz/mpoly.hpp"
#include "schwarz/ramified.hpp"

namespace schwarz {

// Arithmetic expression AST: +, -, *, /, ^ with rational exponents,
// parentheses, rational literals and named variables.
struct Expr {
    enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Num;
    Rat value;         // Num
    std::string name;  // Var
    Rat exponent;      // Pow
    std::vector<std::unique_ptr<Expr>> kids;
    int line = 0, col = 0;
};

using ExprPtr = std::unique_ptr<Expr>;

// Parse a single expression; throws ParseError with line/column info.
ExprPtr parse_expression(const std::string& text, int line_offset = 1);

// Parse "[[a,b,...],[...],...]" of expressions.
std::vector<std::vector<ExprPtr>> parse_matrix(const std::string& text, int line_offset = 1);

// ---- evaluation contexts ---------------------------------------------------

// Function of z (plus at most one parameter): fractional powers of z and of
// (+-parameter) set the ramification indices.  The parameter enters through
// its own generator s with (sign * param) = s^q.
struct ParamInfo {
    std::string name;
    int q = 1;        // param = sign * s^q
    int sign = 1;     // +1: s = param^{1/q}; -1: s = (-param)^{1/q}
    bool used = false;
};

// K = Ram<Rat>: no parameter allowed
Ram<Rat> eval_function(const Expr& e);

// K = Ram<RatFun<Rat>>: one declared parameter
Ram<RatFun<Rat>> eval_function_param(const Expr& e, ParamInfo& param);

// scan for the parameter's fractional-power usage and sign convention
void infer_param_ramification(const Expr& e, ParamInfo& param);

// polynomial in named variables (X1..Xn or Phi1..PhiN) over Q
MPoly<Rat> eval_polynomial(const Expr& e, const std::vector<std::string>& vars);

// scalar in Q(zeta_m); the variable "zeta_m" (or "zeta") denotes the root
CycNum eval_cyclotomic(const Expr& e, int conductor);

}  // namespace schwarz
