#ifndef CATASTRO_EVAL_RESULT_HPP
#define CATASTRO_EVAL_RESULT_HPP

#include <string>

namespace catastro {

enum class Method { ClosedForm, Series, Product, Oracle };

const char* method_name(Method m);

// Numeric value plus convergence metadata. Values are finite, +infinity,
// or undefined (divergent series / outside the formula's domain).
struct EvalResult {
  enum class Kind { Finite, Infinite, Undefined };

  Kind kind = Kind::Undefined;
  double value = 0.0;
  double abs_error = 0.0;   // meaningful only when !heuristic
  bool heuristic = false;   // error bound is an estimate, not certified
  long terms_used = 0;
  Method method = Method::ClosedForm;
  std::string note;

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  bool is_undefined() const { return kind == Kind::Undefined; }

  static EvalResult finite(double v, double bound, long terms, Method m) {
    EvalResult r;
    r.kind = Kind::Finite;
    r.value = v;
    r.abs_error = bound;
    r.terms_used = terms;
    r.method = m;
    return r;
  }

  static EvalResult finite_heuristic(double v, double est, long terms, Method m) {
    EvalResult r = finite(v, est, terms, m);
    r.heuristic = true;
    return r;
  }

  static EvalResult infinite(Method m, long terms = 0) {
    EvalResult r;
    r.kind = Kind::Infinite;
    r.method = m;
    r.terms_used = terms;
    return r;
  }

  static EvalResult undefined(std::string why) {
    EvalResult r;
    r.kind = Kind::Undefined;
    r.note = std::move(why);
    return r;
  }
};

}  // namespace catastro

#endif
