#include "baskex/tables.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "baskex/errors.hpp"

namespace baskex {

namespace {

std::string fmt(double x, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::vector<Method> methods_from(std::initializer_list<const char*> names) {
  std::vector<Method> out;
  for (const char* n : names) out.push_back(parse_method(n));
  return out;
}

AsianSpec weekly_asian_3y(double sigma, double strike) {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.09);
  spec.vol = PiecewiseCurve(sigma);
  spec.observation_times.reserve(157);
  for (int i = 0; i <= 156; ++i)
    spec.observation_times.push_back(3.0 * i / 156.0);
  spec.strike = strike;
  return spec;
}

BasketSpec krekel_basket(const std::vector<double>& vols, double rho,
                         double strike) {
  const std::size_t n = 4;
  const double maturity = 5.0;
  SymMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      cov.set(i, j, (i == j ? 1.0 : rho) * vols[i] * vols[j] * maturity);
  return BasketSpec(std::vector<double>(n, 0.25),
                    std::vector<double>(n, 100.0), std::move(cov), strike, 1.0,
                    maturity, OptionType::Call);
}

DividendOptionSpec dividend_7y(double strike) {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 7.0;
  const double amounts[] = {6.0, 6.5, 7.0, 7.5, 8.0, 8.0, 8.0};
  for (int j = 0; j < 7; ++j)
    spec.dividends.push_back({0.9 + static_cast<double>(j), amounts[j]});
  spec.strike = strike;
  return spec;
}

std::vector<TableDef> make_builtin_tables() {
  std::vector<TableDef> tables;

  {
    TableDef t;
    t.id = "ju_weekly";
    t.param_name = "sigma_strike";
    t.methods = methods_from({"VG1", "VG2", "VG3", "VL3"});
    const double sigmas[] = {0.05, 0.10, 0.20, 0.30, 0.40, 0.50};
    const double strikes[] = {95.0, 100.0, 105.0};
    for (double sigma : sigmas)
      for (double strike : strikes) {
        std::ostringstream label;
        label << "(" << fmt(sigma, 4) << " " << fmt(strike, 4) << ")";
        t.rows.push_back({label.str(), weekly_asian_3y(sigma, strike)});
      }
    tables.push_back(std::move(t));
  }
  {
    TableDef t;
    t.id = "krekel_rho";
    t.param_name = "rho";
    t.methods = methods_from({"VG1", "VG2", "VG3", "VL3"});
    for (double rho : {0.10, 0.30, 0.50, 0.70, 0.80, 0.95})
      t.rows.push_back(
          {fmt(rho, 4), krekel_basket({0.4, 0.4, 0.4, 0.4}, rho, 100.0)});
    tables.push_back(std::move(t));
  }
  {
    TableDef t;
    t.id = "krekel_strike";
    t.param_name = "strike";
    t.methods = methods_from({"VG1", "VG2", "VG3", "VL3"});
    for (int k = 50; k <= 150; k += 10)
      t.rows.push_back({fmt(k, 4), krekel_basket({0.4, 0.4, 0.4, 0.4}, 0.5,
                                                 static_cast<double>(k))});
    tables.push_back(std::move(t));
  }
  {
    TableDef t;
    t.id = "krekel_vol";
    t.param_name = "sigma";
    t.methods = methods_from({"VG1", "VG2", "VG3", "VL3"});
    for (double s : {0.05, 0.10, 0.15, 0.20, 0.30, 0.40, 0.50, 0.60, 0.70,
                     0.80, 1.00})
      t.rows.push_back({fmt(s, 4), krekel_basket({s, s, s, s}, 0.5, 100.0)});
    tables.push_back(std::move(t));
  }
  {
    TableDef t;
    t.id = "krekel_inhom";
    t.param_name = "sigma";
    t.methods = methods_from({"VG1", "VG2", "VG3", "VL3"});
    for (double s : {0.05, 0.10, 0.15, 0.20, 0.30, 0.40, 0.50, 0.60, 0.70,
                     0.80, 1.00})
      t.rows.push_back({fmt(s, 4), krekel_basket({1.0, s, s, s}, 0.5, 100.0)});
    tables.push_back(std::move(t));
  }
  {
    TableDef t;
    t.id = "dividends_7y";
    t.param_name = "strike";
    t.methods = methods_from({"VL2", "VL3"});
    for (double k : {70.0, 100.0, 130.0})
      t.rows.push_back({fmt(k, 4), dividend_7y(k)});
    tables.push_back(std::move(t));
  }
  return tables;
}

}  // namespace

const std::vector<TableDef>& builtin_tables() {
  static const std::vector<TableDef> tables = make_builtin_tables();
  return tables;
}

const TableDef& find_table(const std::string& id) {
  for (const TableDef& t : builtin_tables())
    if (t.id == id) return t;
  std::string known;
  for (const TableDef& t : builtin_tables()) {
    if (!known.empty()) known += ", ";
    known += t.id;
  }
  throw std::invalid_argument("unknown table id '" + id + "' (available: " +
                              known + ")");
}

void run_table(const TableDef& def, const McConfig& mc, std::ostream& out) {
  out << def.param_name;
  for (const Method& m : def.methods) out << "," << m.label;
  out << ",MC,MC_se\n";

  std::vector<std::vector<double>> method_prices(def.methods.size());
  std::vector<double> mc_prices;
  for (const TableRow& row : def.rows) {
    out << row.label;
    const BasketSpec basket = to_basket(row.instrument);
    for (std::size_t m = 0; m < def.methods.size(); ++m) {
      const PriceResult r =
          expand_price(basket, def.methods[m].proxy, def.methods[m].order);
      method_prices[m].push_back(r.price);
      out << "," << fmt(r.price);
    }
    const PriceResult ref = price_mc(basket, mc);
    mc_prices.push_back(ref.price);
    out << "," << fmt(ref.price) << "," << fmt(ref.std_error.value_or(0.0))
        << "\n";
  }

  out << "RMSE";
  for (const auto& prices : method_prices) {
    double acc = 0.0;
    for (std::size_t r = 0; r < prices.size(); ++r) {
      const double e = prices[r] - mc_prices[r];
      acc += e * e;
    }
    out << "," << fmt(std::sqrt(acc / static_cast<double>(prices.size())), 6);
  }
  out << ",,\n";
  out << "MAE";
  for (const auto& prices : method_prices) {
    double worst = 0.0;
    for (std::size_t r = 0; r < prices.size(); ++r)
      worst = std::max(worst, std::fabs(prices[r] - mc_prices[r]));
    out << "," << fmt(worst, 6);
  }
  out << ",,\n";
}

void run_sweep(const RunConfig& config, std::ostream& out) {
  detail::require(config.sweep.has_value(), "sweep definition missing");
  const SweepDef& sweep = *config.sweep;
  std::vector<Method> analytic;
  for (const Method& m : config.methods)
    if (!m.is_mc) analytic.push_back(m);
  detail::require(!analytic.empty(), "sweep needs at least one method");

  const double anchor = average_forward(config.instrument);
  const double notional =
      config.notional.value_or(default_notional(config.instrument));

  std::vector<double> strikes;
  for (double v : sweep.values) {
    switch (sweep.mode) {
      case SweepDef::Mode::Strike: strikes.push_back(v); break;
      case SweepDef::Mode::Moneyness: strikes.push_back(v * anchor); break;
      case SweepDef::Mode::MoneynessOffset:
        strikes.push_back((1.0 + v) * anchor);
        break;
    }
  }

  // Reductions whose basket depends on the strike (cash dividends) cannot
  // share one simulation across strikes; everything else can.
  const bool shareable =
      !std::holds_alternative<DividendOptionSpec>(config.instrument);
  std::vector<PriceResult> mc_results;
  if (shareable) {
    mc_results = price_mc_strikes(to_basket(config.instrument), strikes,
                                  config.mc);
  } else {
    for (double k : strikes)
      mc_results.push_back(
          price_mc(to_basket(with_strike(config.instrument, k)), config.mc));
  }

  out << "moneyness,strike";
  for (const Method& m : analytic) out << "," << m.label;
  out << ",MC,MC_se";
  for (const Method& m : analytic) out << "," << m.label << "_bp";
  out << "\n";

  for (std::size_t s = 0; s < strikes.size(); ++s) {
    const Instrument inst = with_strike(config.instrument, strikes[s]);
    const BasketSpec basket = to_basket(inst);
    out << fmt(strikes[s] / anchor, 8) << "," << fmt(strikes[s]);
    std::vector<double> prices;
    for (const Method& m : analytic) {
      const PriceResult r = expand_price(basket, m.proxy, m.order);
      prices.push_back(r.price);
      out << "," << fmt(r.price);
    }
    out << "," << fmt(mc_results[s].price) << ","
        << fmt(mc_results[s].std_error.value_or(0.0));
    for (double p : prices)
      out << ","
          << fmt((p - mc_results[s].price) / notional * 1.0e4, 6);
    out << "\n";
  }
}

void run_price(const RunConfig& config, std::ostream& out) {
  out << "method,price,std_error,basket_forward,kstar,nu2,alpha,order,note\n";
  for (const Method& m : config.methods) {
    const PriceResult r = run_method(config.instrument, m, config.mc);
    out << m.label << "," << fmt(r.price) << ","
        << (r.std_error ? fmt(*r.std_error) : std::string()) << ","
        << fmt(r.diag.basket_forward) << "," << fmt(r.diag.kstar) << ","
        << fmt(r.diag.nu2) << "," << fmt(r.diag.alpha) << "," << r.diag.order
        << ",";
    std::string note = r.diag.note;
    if (r.diag.divergence_warning)
      note = note.empty() ? "divergence_warning"
                          : note + "; divergence_warning";
    if (note.find(',') != std::string::npos) out << '"' << note << '"';
    else out << note;
    out << "\n";
  }
}

}  // namespace baskex
