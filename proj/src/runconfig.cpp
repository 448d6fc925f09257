#include "baskex/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "baskex/errors.hpp"

namespace baskex {

using nlohmann::json;

BasketSpec to_basket(const Instrument& instrument) {
  return std::visit(
      [](const auto& spec) -> BasketSpec {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BasketSpec>)
          return spec;
        else if constexpr (std::is_same_v<T, AsianSpec>)
          return asian_to_basket(spec);
        else if constexpr (std::is_same_v<T, AsianBasketSpec>)
          return asian_basket_to_basket(spec);
        else
          return dividends_to_basket(spec);
      },
      instrument);
}

Instrument with_strike(const Instrument& instrument, double strike) {
  return std::visit(
      [&](const auto& spec) -> Instrument {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BasketSpec>) {
          return spec.with_strike(strike);
        } else {
          T copy = spec;
          copy.strike = strike;
          return copy;
        }
      },
      instrument);
}

double average_forward(const Instrument& instrument) {
  return std::visit(
      [](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BasketSpec>) {
          return spec.basket_forward();
        } else if constexpr (std::is_same_v<T, AsianSpec>) {
          const std::size_t n = spec.observation_times.size();
          double total = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double w = spec.averaging_weights.empty()
                                 ? 1.0 / static_cast<double>(n)
                                 : spec.averaging_weights[i];
            const double t = spec.observation_times[i];
            double level;
            if (t <= 0.0) {
              level = spec.spot;
              for (const Fixing& f : spec.fixings)
                if (f.time == t) level = f.value;
            } else {
              level = forward_price(spec.spot, spec.rate, spec.yield, t);
            }
            total += w * level;
          }
          return total;
        } else if constexpr (std::is_same_v<T, AsianBasketSpec>) {
          return asian_basket_to_basket(spec).basket_forward();
        } else {
          // model forward of the dividend-paying asset
          const double growth = std::exp(spec.rate.integrate(0.0, spec.maturity));
          double pv_divs = 0.0;
          for (const CashDividend& d : spec.dividends)
            pv_divs += d.amount * std::exp(-spec.rate.integrate(0.0, d.time));
          return growth * (spec.spot - pv_divs);
        }
      },
      instrument);
}

double default_notional(const Instrument& instrument) {
  return std::visit(
      [](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BasketSpec>) {
          return spec.basket_forward();
        } else if constexpr (std::is_same_v<T, AsianSpec>) {
          return spec.spot;
        } else if constexpr (std::is_same_v<T, AsianBasketSpec>) {
          double total = 0.0;
          for (std::size_t j = 0; j < spec.assets.size(); ++j)
            total += spec.basket_weights[j] * spec.assets[j].spot;
          return total;
        } else {
          return spec.spot;
        }
      },
      instrument);
}

Method parse_method(const std::string& name) {
  Method m;
  m.label = name;
  if (name == "MC") {
    m.is_mc = true;
    return m;
  }
  if (name.size() == 3 && (name[0] == 'V') &&
      (name[1] == 'G' || name[1] == 'L') && name[2] >= '0' && name[2] <= '3') {
    m.proxy = name[1] == 'G' ? ProxyKind::VorstGeometric : ProxyKind::VorstLevy;
    m.order = name[2] - '0';
    return m;
  }
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected VG0..VG3, VL0..VL3 or MC)");
}

PriceResult run_method(const Instrument& instrument, const Method& method,
                       const McConfig& mc) {
  const BasketSpec basket = to_basket(instrument);
  if (method.is_mc) return price_mc(basket, mc);
  return expand_price(basket, method.proxy, method.order);
}

namespace {

PiecewiseCurve parse_curve(const json& j, const char* what) {
  if (j.is_number()) return PiecewiseCurve(j.get<double>());
  if (j.is_object() && j.contains("values")) {
    std::vector<double> breaks =
        j.value("breakpoints", std::vector<double>{});
    auto values = j.at("values").get<std::vector<double>>();
    return PiecewiseCurve(std::move(breaks), std::move(values));
  }
  throw std::invalid_argument(std::string(what) +
                              ": expected a number or "
                              "{breakpoints, values}");
}

OptionType parse_option(const json& j) {
  const std::string s = j.value("option", "call");
  if (s == "call") return OptionType::Call;
  if (s == "put") return OptionType::Put;
  throw std::invalid_argument("option must be 'call' or 'put'");
}

SymMatrix parse_correlations(const json& j, std::size_t n) {
  SymMatrix corr(n);
  if (j.is_number()) {
    const double rho = j.get<double>();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= i; ++k)
        corr.set(i, k, i == k ? 1.0 : rho);
    return corr;
  }
  const auto rows = j.get<std::vector<std::vector<double>>>();
  detail::require(rows.size() == n, "correlations: size mismatch");
  return SymMatrix::from_rows(rows);
}

Instrument parse_instrument(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "basket") {
    auto weights = j.at("weights").get<std::vector<double>>();
    auto forwards = j.at("forwards").get<std::vector<double>>();
    const std::size_t n = weights.size();
    const double maturity = j.at("maturity").get<double>();
    SymMatrix cov;
    if (j.contains("covariance")) {
      cov = SymMatrix::from_rows(
          j.at("covariance").get<std::vector<std::vector<double>>>());
    } else {
      const auto vols = j.at("vols").get<std::vector<double>>();
      detail::require(vols.size() == n, "vols: size mismatch");
      SymMatrix corr = parse_correlations(j.at("correlations"), n);
      cov = SymMatrix(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b)
          cov.set(a, b, corr(a, b) * vols[a] * vols[b] * maturity);
    }
    return BasketSpec(std::move(weights), std::move(forwards), std::move(cov),
                      j.at("strike").get<double>(), j.value("discount", 1.0),
                      maturity, parse_option(j));
  }
  if (type == "asian") {
    AsianSpec spec;
    spec.spot = j.at("spot").get<double>();
    spec.rate = parse_curve(j.at("rate"), "rate");
    if (j.contains("yield")) spec.yield = parse_curve(j.at("yield"), "yield");
    spec.vol = parse_curve(j.at("vol"), "vol");
    spec.observation_times =
        j.at("observation_times").get<std::vector<double>>();
    spec.averaging_weights =
        j.value("averaging_weights", std::vector<double>{});
    spec.strike = j.at("strike").get<double>();
    spec.type = parse_option(j);
    if (j.contains("discount"))
      spec.discount_override = j.at("discount").get<double>();
    if (j.contains("fixings"))
      for (const auto& f : j.at("fixings"))
        spec.fixings.push_back(
            {f.at("time").get<double>(), f.at("value").get<double>()});
    return spec;
  }
  if (type == "asian_basket") {
    AsianBasketSpec spec;
    const PiecewiseCurve top_rate = parse_curve(j.at("rate"), "rate");
    spec.discount_rate = top_rate;
    for (const auto& a : j.at("assets")) {
      AsianBasketAsset asset;
      asset.spot = a.at("spot").get<double>();
      asset.rate = a.contains("rate") ? parse_curve(a.at("rate"), "asset rate")
                                      : top_rate;
      if (a.contains("yield"))
        asset.yield = parse_curve(a.at("yield"), "asset yield");
      asset.vol = parse_curve(a.at("vol"), "asset vol");
      spec.assets.push_back(std::move(asset));
    }
    spec.correlations =
        parse_correlations(j.at("correlations"), spec.assets.size());
    spec.basket_weights = j.at("basket_weights").get<std::vector<double>>();
    spec.observation_times =
        j.at("observation_times").get<std::vector<double>>();
    spec.averaging_weights =
        j.value("averaging_weights", std::vector<double>{});
    spec.strike = j.at("strike").get<double>();
    spec.type = parse_option(j);
    if (j.contains("discount"))
      spec.discount_override = j.at("discount").get<double>();
    return spec;
  }
  if (type == "dividend_vanilla") {
    DividendOptionSpec spec;
    spec.spot = j.at("spot").get<double>();
    spec.rate = parse_curve(j.at("rate"), "rate");
    spec.vol = parse_curve(j.at("vol"), "vol");
    for (const auto& d : j.at("dividends"))
      spec.dividends.push_back(
          {d.at("time").get<double>(), d.at("amount").get<double>()});
    spec.strike = j.at("strike").get<double>();
    spec.maturity = j.at("maturity").get<double>();
    spec.type = parse_option(j);
    return spec;
  }
  throw std::invalid_argument("unknown instrument type '" + type + "'");
}

McConfig parse_mc(const json& j) {
  McConfig cfg;
  if (!j.is_object()) return cfg;
  cfg.paths = j.value("paths", cfg.paths);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("sampler")) {
    const std::string s = j.at("sampler").get<std::string>();
    if (s == "pseudorandom")
      cfg.sampler = McSampler::Pseudorandom;
    else if (s == "sobol" || s == "low_discrepancy")
      cfg.sampler = McSampler::LowDiscrepancy;
    else
      throw std::invalid_argument("sampler must be 'pseudorandom' or 'sobol'");
  }
  cfg.antithetic = j.value("antithetic", cfg.antithetic);
  cfg.block_size = j.value("block_size", cfg.block_size);
  cfg.threads = j.value("threads", cfg.threads);
  return cfg;
}

SweepDef parse_sweep(const json& j) {
  SweepDef def;
  const std::string mode = j.value("mode", "moneyness");
  if (mode == "strike")
    def.mode = SweepDef::Mode::Strike;
  else if (mode == "moneyness")
    def.mode = SweepDef::Mode::Moneyness;
  else if (mode == "moneyness_offset")
    def.mode = SweepDef::Mode::MoneynessOffset;
  else
    throw std::invalid_argument(
        "sweep mode must be strike, moneyness or moneyness_offset");
  if (j.at("values").is_array()) {
    def.values = j.at("values").get<std::vector<double>>();
  } else {
    const auto& g = j.at("values");
    const double from = g.at("from").get<double>();
    const double to = g.at("to").get<double>();
    const int count = g.at("count").get<int>();
    detail::require(count >= 2, "sweep grid needs at least 2 points");
    for (int i = 0; i < count; ++i)
      def.values.push_back(from + (to - from) * i / (count - 1));
  }
  detail::require(!def.values.empty(), "sweep values must not be empty");
  return def;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  try {
    RunConfig cfg;
    cfg.instrument = parse_instrument(j.at("instrument"));
    for (const auto& m : j.at("methods"))
      cfg.methods.push_back(parse_method(m.get<std::string>()));
    detail::require(!cfg.methods.empty(), "at least one method required");
    if (j.contains("mc")) cfg.mc = parse_mc(j.at("mc"));
    if (j.contains("sweep")) cfg.sweep = parse_sweep(j.at("sweep"));
    if (j.contains("notional"))
      cfg.notional = j.at("notional").get<double>();
    if (j.contains("output"))
      cfg.output = j.at("output").get<std::string>();
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") +
                                e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace baskex
