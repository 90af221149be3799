#include "spectral_clt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "spectral_clt/centering.hpp"
#include "spectral_clt/csv.hpp"
#include "spectral_clt/errors.hpp"
#include "spectral_clt/lrt.hpp"
#include "spectral_clt/mc_lab.hpp"
#include "spectral_clt/run_config.hpp"
#include "spectral_clt/stieltjes.hpp"

namespace spectral_clt::cli {

namespace {

using Doc = nlohmann::ordered_json;

// A CSV rendering of a report: header plus rows of scalar cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Doc>> rows;
};

struct Report {
  std::string out = "-";
  std::string format = "json";
  Doc doc;
  std::optional<Table> table;  // defaults to a field,value listing of doc
  std::vector<std::pair<std::string, std::string>> side_files;
  std::string summary;
};

std::string format_cell(const Doc& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
  }
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const Doc& v, const std::string& prefix, Table& table) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, table);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), table);
  } else if (v.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? ";" : "") + format_cell(v[i]);
    table.rows.push_back({prefix, joined});
  } else {
    table.rows.push_back({prefix, v});
  }
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t j = 0; j < table.header.size(); ++j) os << (j ? "," : "") << csv_quote(table.header[j]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_quote(format_cell(row[j]));
    os << '\n';
  }
  return os.str();
}

std::string render(const Report& report) {
  if (report.format == "json") return report.doc.dump(2) + "\n";
  if (report.table) return render_csv(*report.table);
  Table table{{"field", "value"}, {}};
  flatten(report.doc, "", table);
  return render_csv(table);
}

// Flag values are kept aside and copied into the RunConfig only when the
// flag was actually given, so that they override config-file values.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(name, *value, help);
    entries_.push_back({opt, key, [value] { return Json(*value); }});
    return opt;
  }

  CLI::Option* add_flag(const std::string& name, const std::string& key, const std::string& help) {
    CLI::Option* opt = app_->add_flag(name, help);
    entries_.push_back({opt, key, [] { return Json(true); }});
    return opt;
  }

  // Repeatable --spike; occurrences are joined into one spike spec.
  CLI::Option* add_spikes() {
    auto value = std::make_shared<std::vector<std::string>>();
    CLI::Option* opt = app_->add_option("--spike", *value, "spike as value:multiplicity (repeatable)");
    entries_.push_back({opt, "spikes", [value] {
                          std::string joined;
                          for (const auto& s : *value) joined += (joined.empty() ? "" : ",") + s;
                          return Json(joined);
                        }});
    return opt;
  }

  void overlay(RunConfig& config) const {
    for (const auto& e : entries_) {
      if (e.option->count() > 0) config.set(e.key, e.value());
    }
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::string key;
    std::function<Json()> value;
  };
  CLI::App* app_;
  std::vector<Entry> entries_;
};

std::set<std::string> with_common(std::set<std::string> keys) {
  keys.insert({"out", "format"});
  return keys;
}

void read_output(ConfigReader& reader, Report& report) {
  if (auto out = reader.text("out", false)) report.out = *out;
  if (auto format = reader.text("format", false)) {
    if (*format != "json" && *format != "csv") {
      reader.fail("'format' must be json or csv, got '" + *format + "'");
    } else {
      report.format = *format;
    }
  }
}

Doc model_doc(const SpikedModel& model) {
  Doc spikes = Doc::array();
  for (const auto& s : model.spikes()) spikes.push_back({{"value", s.value}, {"multiplicity", s.multiplicity}});
  return {{"p", model.dimension()},
          {"n", model.sample_size()},
          {"y", model.aspect_ratio()},
          {"spikes", spikes}};
}

Doc header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

Doc value_or_null(const std::optional<double>& v) { return v ? Doc(*v) : Doc(nullptr); }

Backend parse_backend(ConfigReader& reader) {
  const auto name = reader.text("backend", false).value_or("openmp");
  if (name == "openmp") return Backend::openmp;
  if (name != "serial") reader.fail("'backend' must be serial or openmp, got '" + name + "'");
  return Backend::serial;
}

// ---- centering ------------------------------------------------------------

Report cmd_centering(const RunConfig& config) {
  Report report;
  ConfigReader reader(config, with_common({"p", "n", "spikes", "f", "margin", "backend", "threads"}));
  read_output(reader, report);
  const auto p = reader.positive_int("p", true);
  const auto n = reader.positive_int("n", true);
  const auto spikes = reader.spikes("spikes");
  const auto f_name = reader.text("f", true);
  const double margin = reader.real("margin", false).value_or(0.5);
  if (!(margin > 0.0)) reader.fail("'margin' must be positive");
  const Backend backend = parse_backend(reader);
  const auto threads = reader.positive_int("threads", false);
  reader.finish();

  const SpikedModel model = SpikedModel::create(*p, *n, spikes);
  const SpectralFunction f = functions::parse(*f_name);
  CenteringOptions options;
  options.margin = margin;
  options.quadrature.backend = backend;
  options.quadrature.threads = threads.value_or(0);
  const CenteringResult r = centering_value(f, model, options);

  std::optional<double> oracle;
  const double y = model.aspect_ratio();
  if (f.name() == "x") oracle = closed_form_mean(model);
  if (f.name() == "log" && y < 1.0) oracle = closed_form_log(model);
  if (f.name() == "lrt_g" && y < 1.0) oracle = closed_form_lrt_g(model);

  report.doc = header("centering");
  report.doc["model"] = model_doc(model);
  report.doc["f"] = f.name();
  report.doc["term1"] = r.term1;
  report.doc["term2"] = r.term2;
  report.doc["base"] = r.base;
  report.doc["spike_sum"] = r.spike_sum;
  report.doc["total"] = r.total;
  report.doc["est_error"] = r.est_error;
  report.doc["quadrature_nodes_used"] = r.quadrature_nodes_used;
  report.doc["margin_used"] = r.margin_used;
  report.doc["oracle"] = value_or_null(oracle);
  report.doc["gap"] = value_or_null(oracle ? std::optional<double>(std::abs(r.total - *oracle)) : std::nullopt);
  return report;
}

// ---- test -----------------------------------------------------------------

Report cmd_test(const RunConfig& config) {
  Report report;
  ConfigReader reader(config, with_common({"input", "alpha", "header", "center", "transpose"}));
  read_output(reader, report);
  const auto input = reader.text("input", true);
  const double alpha = reader.real("alpha", false).value_or(0.05);
  if (!(alpha > 0.0 && alpha < 1.0)) reader.fail("'alpha' must lie in (0, 1)");
  const bool skip_header = reader.flag("header");
  const bool center = reader.flag("center");
  const bool transpose = reader.flag("transpose");
  reader.finish();

  Eigen::MatrixXd x = read_numeric_csv_file(*input, CsvOptions{skip_header});
  if (transpose) x.transposeInPlace();
  const auto n = static_cast<int>(x.rows());
  const auto p = static_cast<int>(x.cols());
  if (p >= n) {
    std::ostringstream msg;
    msg << *input << ": need more observations than variables (rows n=" << n << ", columns p=" << p << ")";
    throw InputError(msg.str());
  }
  if (center) x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd s = (x.transpose() * x) / static_cast<double>(n);
  const std::vector<double> eigenvalues = symmetric_eigenvalues(s);
  const TestOutcome t = run_test(eigenvalues, p, n, alpha);

  report.doc = header("test");
  report.doc["input"] = *input;
  report.doc["p"] = p;
  report.doc["n"] = n;
  report.doc["y"] = t.y;
  report.doc["centered_columns"] = center;
  report.doc["alpha"] = t.alpha;
  report.doc["statistic"] = t.statistic;
  report.doc["centered"] = t.centered;
  report.doc["z_score"] = t.z_score;
  report.doc["p_value"] = t.p_value;
  report.doc["reject"] = t.reject;
  return report;
}

// ---- power ----------------------------------------------------------------

Report cmd_power(const RunConfig& config) {
  Report report;
  ConfigReader reader(config, with_common({"p", "n", "spikes", "alphas"}));
  read_output(reader, report);
  const auto p = reader.positive_int("p", true);
  const auto n = reader.positive_int("n", true);
  const auto spikes = reader.spikes("spikes");
  auto alphas = reader.real_list("alphas", true);
  if (alphas) {
    for (double a : *alphas) {
      if (!(a > 0.0 && a < 1.0)) reader.fail("'alphas' entries must lie in (0, 1), got " + format_cell(Doc(a)));
    }
  }
  reader.finish();

  const SpikedModel model = SpikedModel::create(*p, *n, spikes);
  if (!(model.aspect_ratio() < 1.0)) throw DomainError("power requires p < n");
  std::sort(alphas->begin(), alphas->end());
  const bool single = model.spike_count() == 1 && model.spikes()[0].multiplicity == 1;

  Table table;
  table.header = {"alpha", "power"};
  if (single) table.header.push_back("power_single_spike");
  Doc rows = Doc::array();
  for (double a : *alphas) {
    Doc row = {{"alpha", a}, {"power", power(model, a)}};
    std::vector<Doc> cells = {a, row["power"]};
    if (single) {
      row["power_single_spike"] = power_single_spike(model.spikes()[0].value, model.aspect_ratio(), a);
      cells.push_back(row["power_single_spike"]);
    }
    rows.push_back(row);
    table.rows.push_back(std::move(cells));
  }

  report.doc = header("power");
  report.doc["model"] = model_doc(model);
  report.doc["shift"] = spike_shift(model);
  report.doc["rows"] = rows;
  report.table = std::move(table);
  return report;
}

// ---- experiment -----------------------------------------------------------

Report cmd_experiment(const RunConfig& config) {
  Report report;
  ConfigReader reader(config, with_common({"kind", "p", "n", "spikes", "reps", "seed", "entries", "f",
                                           "alpha", "backend", "threads", "dump_reps"}));
  read_output(reader, report);
  const std::string kind = reader.text("kind", false).value_or("clt");
  if (kind != "clt" && kind != "size_power") reader.fail("'kind' must be clt or size_power, got '" + kind + "'");
  const auto p = reader.positive_int("p", true);
  const auto n = reader.positive_int("n", true);
  const auto spikes = reader.spikes("spikes");
  const auto reps = reader.positive_int("reps", true);
  const std::uint64_t seed = reader.seed("seed", false).value_or(0);
  const std::string entries = reader.text("entries", false).value_or("gaussian");
  if (entries != "gaussian" && entries != "rademacher") {
    reader.fail("'entries' must be gaussian or rademacher, got '" + entries + "'");
  }
  const std::string f_name = reader.text("f", false).value_or("lrt_g");
  const double alpha = reader.real("alpha", false).value_or(0.05);
  if (!(alpha > 0.0 && alpha < 1.0)) reader.fail("'alpha' must lie in (0, 1)");
  const Backend backend = parse_backend(reader);
  const auto threads = reader.positive_int("threads", false);
  const auto dump_reps = reader.text("dump_reps", false);
  reader.finish();

  ExperimentConfig ec{SpikedModel::create(*p, *n, spikes)};
  ec.reps = *reps;
  ec.seed = seed;
  ec.entries = entries == "gaussian" ? EntryDistribution::gaussian : EntryDistribution::rademacher;
  ec.test_function = functions::parse(f_name);
  ec.alpha = alpha;
  ec.backend = backend;
  ec.threads = threads.value_or(0);
  if (kind == "size_power") {
    if (!(ec.model.aspect_ratio() < 1.0)) throw DomainError("size_power experiments require p < n");
    if (ec.entries != EntryDistribution::gaussian) throw DomainError("size_power experiments require gaussian entries");
  }

  const ExperimentReport r = kind == "clt" ? run_clt_experiment(ec) : empirical_size_power(ec);

  report.doc = header("experiment");
  report.doc["kind"] = kind;
  report.doc["model"] = model_doc(ec.model);
  report.doc["f"] = kind == "clt" ? ec.test_function.name() : std::string("lrt_g");
  report.doc["entries"] = entries;
  report.doc["seed"] = seed;
  report.doc["alpha"] = alpha;
  report.doc["reps"] = r.reps;
  report.doc["centering"] = r.centering;
  report.doc["emp_mean"] = r.emp_mean;
  report.doc["emp_var"] = value_or_null(r.emp_var);
  report.doc["mean_se"] = value_or_null(r.mean_se);
  report.doc["ci95"] = r.ci95 ? Doc::array({r.ci95->first, r.ci95->second}) : Doc(nullptr);
  report.doc["theory_mean"] = value_or_null(r.theory_mean);
  report.doc["theory_var"] = value_or_null(r.theory_var);
  report.doc["reject_rate"] = value_or_null(r.reject_rate);
  report.doc["theory_reject_rate"] = value_or_null(r.theory_reject_rate);
  report.doc["reject_se"] = value_or_null(r.reject_se);

  if (dump_reps) {
    Table table{{"rep", "statistic", "centered", "reject"}, {}};
    for (const auto& rec : r.replicates) table.rows.push_back({rec.rep, rec.statistic, rec.centered, rec.reject});
    report.side_files.emplace_back(*dump_reps, render_csv(table));
  }

  std::ostringstream summary;
  summary << kind << ": reps=" << r.reps << " emp_mean=" << format_cell(Doc(r.emp_mean));
  if (r.theory_mean) summary << " (theory " << format_cell(Doc(*r.theory_mean)) << ")";
  if (r.emp_var) summary << " emp_var=" << format_cell(Doc(*r.emp_var));
  if (r.theory_var) summary << " (theory " << format_cell(Doc(*r.theory_var)) << ")";
  if (r.reject_rate) summary << " reject_rate=" << format_cell(Doc(*r.reject_rate));
  if (r.theory_reject_rate) summary << " (theory " << format_cell(Doc(*r.theory_reject_rate)) << ")";
  report.summary = summary.str();
  return report;
}

// ---- mp-info --------------------------------------------------------------

Report cmd_mp_info(const RunConfig& config) {
  Report report;
  ConfigReader reader(config, with_common({"p", "n"}));
  read_output(reader, report);
  const auto p = reader.positive_int("p", true);
  const auto n = reader.positive_int("n", true);
  reader.finish();

  const double y = static_cast<double>(*p) / static_cast<double>(*n);
  const MPSupport support = mp_support(y);
  report.doc = header("mp-info");
  report.doc["p"] = *p;
  report.doc["n"] = *n;
  report.doc["y"] = y;
  report.doc["a_y"] = support.lower;
  report.doc["b_y"] = support.upper;
  report.doc["atom_at_zero"] = mp_atom_at_zero(y);
  if (y < 1.0) {
    const CltParams params = clt_params_g(y);
    report.doc["m_g"] = params.mean;
    report.doc["v_g"] = params.variance;
    report.doc["null_centering"] = null_centering_g(y);
    report.doc["p_null_centering"] = *p * null_centering_g(y);
  } else {
    report.doc["m_g"] = nullptr;
    report.doc["v_g"] = nullptr;
    report.doc["null_centering"] = nullptr;
    report.doc["p_null_centering"] = nullptr;
  }
  return report;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << text;
  if (!os) throw InputError("failed writing '" + path + "'");
}

struct Subcommand {
  CLI::App* app;
  std::unique_ptr<Flags> flags;
  std::function<Report(const RunConfig&)> run;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spiked-covariance spectral statistics: centering terms, the corrected sphericity test, "
               "power curves and Monte Carlo experiments.",
               "spectral-clt"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string config_path;
  std::vector<Subcommand> commands;
  auto add_command = [&](const std::string& name, const std::string& description,
                         std::function<Report(const RunConfig&)> fn) -> Flags& {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON file with parameters; flags override it");
    auto flags = std::make_unique<Flags>(sub);
    flags->add<std::string>("--out,-o", "out", "output path, - for stdout");
    flags->add<std::string>("--format", "format", "json or csv");
    commands.push_back({sub, std::move(flags), std::move(fn)});
    return *commands.back().flags;
  };

  {
    Flags& f = add_command("centering", "finite-n centering value of a linear spectral statistic", cmd_centering);
    f.add<int>("--p", "p", "dimension");
    f.add<int>("--n", "n", "sample size");
    f.add_spikes();
    f.add<std::string>("--f", "f", "x, x2, log, lrt_g or poly:c0,c1,...");
    f.add<double>("--margin", "margin", "relative contour margin");
    f.add<std::string>("--backend", "backend", "serial or openmp");
    f.add<int>("--threads", "threads", "OpenMP threads");
  }
  {
    Flags& f = add_command("test", "corrected likelihood-ratio sphericity test on a CSV data matrix", cmd_test);
    f.add<std::string>("input", "input", "CSV with one observation per row");
    f.add<double>("--alpha", "alpha", "significance level");
    f.add_flag("--header", "header", "skip the first line");
    f.add_flag("--center", "center", "subtract column means (still divides by n)");
    f.add_flag("--transpose", "transpose", "rows are variables, columns are observations");
  }
  {
    Flags& f = add_command("power", "asymptotic power of the test against a spiked alternative", cmd_power);
    f.add<int>("--p", "p", "dimension");
    f.add<int>("--n", "n", "sample size");
    f.add_spikes();
    f.add<std::string>("--alphas", "alphas", "comma-separated significance levels");
  }
  {
    Flags& f = add_command("experiment", "Monte Carlo CLT or size/power experiment", cmd_experiment);
    f.add<std::string>("--kind", "kind", "clt or size_power");
    f.add<int>("--p", "p", "dimension");
    f.add<int>("--n", "n", "sample size");
    f.add_spikes();
    f.add<int>("--reps", "reps", "number of replicates");
    f.add<std::uint64_t>("--seed", "seed", "random seed");
    f.add<std::string>("--entries", "entries", "gaussian or rademacher");
    f.add<std::string>("--f", "f", "test function for clt runs");
    f.add<double>("--alpha", "alpha", "significance level");
    f.add<std::string>("--backend", "backend", "serial or openmp");
    f.add<int>("--threads", "threads", "OpenMP threads");
    f.add<std::string>("--dump-reps", "dump_reps", "write per-replicate CSV to this path");
  }
  {
    Flags& f = add_command("mp-info", "Marcenko-Pastur edges and null LRT constants for p, n", cmd_mp_info);
    f.add<int>("--p", "p", "dimension");
    f.add<int>("--n", "n", "sample size");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    for (const auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::from_file(config_path);
      cmd.flags->overlay(config);
      const Report report = cmd.run(config);
      const std::string text = render(report);
      for (const auto& [path, content] : report.side_files) write_file(path, content);
      if (report.out == "-") {
        out << text;
      } else {
        write_file(report.out, text);
      }
      if (!report.summary.empty()) err << report.summary << '\n';
      return kSuccess;
    }
  } catch (const ModelError& e) {
    err << "error: invalid model: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SingularMatrix& e) {
    err << "error: singular sample covariance: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kInternalError;
  }
  err << "error: no command given\n";
  return kUsageError;
}

}  // namespace spectral_clt::cli
