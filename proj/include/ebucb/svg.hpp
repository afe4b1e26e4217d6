#ifndef EBUCB_SVG_HPP
#define EBUCB_SVG_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ebucb/harness.hpp"

namespace ebucb {

/// Deterministic line chart: one polyline per series plus a translucent
/// +-1 stderr band; x axis is t, y axis cumulative regret. Byte-identical
/// output for identical inputs. marker_t, when set, draws a vertical
/// reference line at that step.
void emit_svg(const std::vector<AggregateResult>& results, std::ostream& out,
              const std::string& title,
              std::optional<int> marker_t = std::nullopt);

void emit_svg_file(const std::vector<AggregateResult>& results,
                   const std::string& path, const std::string& title,
                   std::optional<int> marker_t = std::nullopt);

} // namespace ebucb

#endif
