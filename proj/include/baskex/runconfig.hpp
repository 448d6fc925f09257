#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "baskex/expansion.hpp"
#include "baskex/mc.hpp"
#include "baskex/reductions.hpp"

namespace baskex {

using Instrument =
    std::variant<AsianSpec, BasketSpec, AsianBasketSpec, DividendOptionSpec>;

/// Reduce any instrument to the canonical basket form.
BasketSpec to_basket(const Instrument& instrument);

/// Copy with the option strike replaced (re-reduced where the strike enters
/// the reduction itself).
Instrument with_strike(const Instrument& instrument, double strike);

/// Forward value of the underlying average/asset, the anchor for moneyness
/// grids.
double average_forward(const Instrument& instrument);

/// Default basis-point normalization for sweeps: the underlying spot (sum of
/// weighted spots for an asian basket, basket forward for a plain basket).
double default_notional(const Instrument& instrument);

struct Method {
  bool is_mc = false;
  ProxyKind proxy = ProxyKind::VorstGeometric;
  int order = 0;
  std::string label;
};

/// Accepts "VG0".."VG3", "VL0".."VL3" and "MC".
Method parse_method(const std::string& name);

PriceResult run_method(const Instrument& instrument, const Method& method,
                       const McConfig& mc);

struct SweepDef {
  enum class Mode { Strike, Moneyness, MoneynessOffset };
  Mode mode = Mode::Moneyness;
  std::vector<double> values;
};

struct RunConfig {
  Instrument instrument;
  std::vector<Method> methods;
  McConfig mc;
  std::optional<SweepDef> sweep;
  std::optional<double> notional;
  std::optional<std::string> output;
};

/// Parse the JSON configuration document (see README for the schema).
/// Malformed input throws std::invalid_argument.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace baskex
