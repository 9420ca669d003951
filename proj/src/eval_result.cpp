#include "catastro/eval_result.hpp"

namespace catastro {

const char* method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::Series: return "series";
    case Method::Product: return "product";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace catastro
