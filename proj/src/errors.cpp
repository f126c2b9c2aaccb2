#include "l2dict/errors.hpp"

namespace l2dict {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_input: return "invalid input";
    case errc::not_psd: return "not positive semidefinite";
    case errc::rank_too_low: return "rank too low";
    case errc::invalid_bracket: return "invalid bracket";
    case errc::k_too_small: return "K too small";
    case errc::use_general_path: return "use general path";
    case errc::not_representable: return "not representable";
    case errc::range_mismatch: return "range mismatch";
    case errc::empty_range: return "empty range";
    case errc::parse_error: return "parse error";
  }
  return "error";
}

}  // namespace l2dict
