#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "baskex/runconfig.hpp"

namespace baskex {

/// Built-in benchmark table: a parameter grid of instruments priced with a
/// fixed method list plus the MC reference. Definitions are data; the runner
/// below is generic.
struct TableRow {
  std::string label;
  Instrument instrument;
};

struct TableDef {
  std::string id;
  std::string param_name;
  std::vector<Method> methods;
  std::vector<TableRow> rows;
};

const std::vector<TableDef>& builtin_tables();
const TableDef& find_table(const std::string& id);

/// Prices every row with each method and the MC reference, writes CSV with
/// RMSE and MAE footer rows computed against the MC column.
void run_table(const TableDef& def, const McConfig& mc, std::ostream& out);

/// Strike/moneyness sweep emitting per-method prices and errors in basis
/// points of the notional against the MC reference.
void run_sweep(const RunConfig& config, std::ostream& out);

/// Price a single instrument with each configured method, one CSV row per
/// method.
void run_price(const RunConfig& config, std::ostream& out);

}  // namespace baskex
