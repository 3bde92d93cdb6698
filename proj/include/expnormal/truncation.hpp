#ifndef EXPNORMAL_TRUNCATION_HPP
#define EXPNORMAL_TRUNCATION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "expnormal/constants.hpp"

namespace expnormal {

/// Treatment of the discarded centered tail sum_{j>J} (E_j - 1)/(2j+1).
enum class TailMode { drop, gaussian };

/// Which algebraic arrangement of the series is evaluated term by term.
enum class SeriesForm { raw, centered };

/// Cutoff for the infinite exponential/gamma series. Terms j = 1..J are kept
/// alongside the j = 0 term.
struct TruncationConfig {
  std::size_t J = 10000;
  TailMode tail_mode = TailMode::gaussian;
  SeriesForm form = SeriesForm::centered;

  void validate() const {
    if (J < 1) throw ConfigError("TruncationConfig: J must be at least 1");
  }

  friend bool operator==(const TruncationConfig&, const TruncationConfig&) = default;
};

inline std::string_view to_string(TailMode m) { return m == TailMode::drop ? "drop" : "gaussian"; }
inline std::string_view to_string(SeriesForm f) { return f == SeriesForm::raw ? "raw" : "centered"; }

inline std::optional<TailMode> parse_tail_mode(std::string_view s) {
  if (s == "drop") return TailMode::drop;
  if (s == "gaussian") return TailMode::gaussian;
  return std::nullopt;
}

inline std::optional<SeriesForm> parse_series_form(std::string_view s) {
  if (s == "raw") return SeriesForm::raw;
  if (s == "centered") return SeriesForm::centered;
  return std::nullopt;
}

}  // namespace expnormal

#endif  // EXPNORMAL_TRUNCATION_HPP
