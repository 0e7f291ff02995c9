#include "pseudoatom/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "pseudoatom/catalog.hpp"
#include "pseudoatom/comparison.hpp"
#include "pseudoatom/errors.hpp"
#include "pseudoatom/reference_data.hpp"

namespace pseudoatom::cli {

  namespace {

    constexpr double model_b_tolerance = 0.05; // eV, discrepancy-report threshold

    std::string normalize_key(std::string_view key) {
      std::string k(key);
      std::replace(k.begin(), k.end(), '-', '_');
      return k;
    }

    std::string trim(std::string_view s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string_view::npos) return {};
      const auto last = s.find_last_not_of(" \t\r");
      return std::string(s.substr(first, last - first + 1));
    }

    template <typename T>
    T parse_number(std::string_view key, std::string_view value) {
      T out{};
      const std::string v = trim(value);
      const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || end != v.data() + v.size() || v.empty())
        throw ConfigError("invalid value '" + v + "' for '" + std::string(key) + "'");
      return out;
    }

    OutputFormat parse_format(std::string_view value) {
      if (value == "text") return OutputFormat::Text;
      if (value == "csv") return OutputFormat::Csv;
      if (value == "json") return OutputFormat::Json;
      throw ConfigError("invalid value '" + std::string(value) + "' for 'format' (expected text, csv or json)");
    }

    std::vector<int> parse_int_list(std::string_view key, std::string_view text) {
      std::vector<int> values;
      std::string item;
      std::istringstream in{std::string(text)};
      while (std::getline(in, item, ',')) values.push_back(parse_number<int>(key, item));
      return values;
    }

    std::string mn_label(const AtomSpec& atom) {
      return std::to_string(atom.m_permutations) + "/" + std::to_string(atom.n_electrons);
    }

    // ---- table commands -------------------------------------------------

    struct TableKind {
      reference::TableId id;
      std::string_view title;
      std::string_view label_key;
      double tolerance_a; // eV
    };

    constexpr TableKind table1_kind{reference::TableId::I, "Ionization potentials (eV)", "atom", 0.01};
    constexpr TableKind table2_kind{reference::TableId::II, "Helium binding energies (eV)", "state", 0.005};
    constexpr TableKind table3_kind{reference::TableId::III, "Lithium excited-state eigenvalues (eV)", "state", 0.002};

    struct OutputRow {
      std::string label;
      std::string mn; // table I only
      double model_a = 0.0, model_b = 0.0;
      double golden_a = 0.0, golden_b = 0.0;
      std::optional<double> reference, reference_alt;
      std::string golden_a_text, golden_b_text, reference_text, reference_alt_text; // as printed
      double dev_a = 0.0, dev_b = 0.0;
      std::string status_a, status_b;
    };

    struct TableOutcome {
      std::vector<OutputRow> rows;
      bool compared = false;
      ComparisonReport report_a, report_b;
    };

    std::vector<spectra::TableRow> build_rows(const TableKind& kind, const spectra::RadialSolver& solver,
                                              PotentialModel model, const RunConfig& config) {
      switch (kind.id) {
      case reference::TableId::I: return spectra::ionization_table(solver, model, config.units, config.mg_permutations);
      case reference::TableId::II: return spectra::helium_binding_table(solver, model, config.units);
      case reference::TableId::III: return spectra::lithium_spectrum(solver, model, config.units);
      }
      return {};
    }

    TableOutcome run_table(const TableKind& kind, const RunConfig& config) {
      const auto records = config.reference_path.empty() ? reference::embedded_records()
                                                          : reference::load_reference_file(config.reference_path);
      const auto golden = reference::select(records, kind.id);

      const spectra::RadialSolver solver(config.basis);
      const auto rows_a = build_rows(kind, solver, PotentialModel::SymmetryDependent, config);
      const auto rows_b = build_rows(kind, solver, PotentialModel::CentralScreening, config);

      std::vector<GoldenValue> golden_a, golden_b;
      for (const auto& r : golden) {
        golden_a.push_back({r.label, r.present1_ev.value});
        golden_b.push_back({r.label, r.present2_ev.value});
      }

      TableOutcome outcome;
      outcome.compared = config.units.label == UnitLabel::PaperCompat;
      outcome.report_a = compare(rows_a, golden_a, kind.tolerance_a);
      outcome.report_b = compare(rows_b, golden_b, model_b_tolerance);

      const auto atoms = atom_catalog(config.mg_permutations);
      for (std::size_t i = 0; i < rows_a.size(); ++i) {
        OutputRow row;
        row.label = rows_a[i].label;
        if (kind.id == reference::TableId::I) row.mn = mn_label(atoms[i]);
        row.model_a = rows_a[i].value_ev;
        row.model_b = rows_b[i].value_ev;
        row.golden_a = golden[i].present1_ev.value;
        row.golden_b = golden[i].present2_ev.value;
        row.golden_a_text = golden[i].present1_ev.text;
        row.golden_b_text = golden[i].present2_ev.text;
        if (golden[i].reference_ev) {
          row.reference = golden[i].reference_ev->value;
          row.reference_text = golden[i].reference_ev->text;
        }
        if (golden[i].reference_alt_ev) {
          row.reference_alt = golden[i].reference_alt_ev->value;
          row.reference_alt_text = golden[i].reference_alt_ev->text;
        }
        row.dev_a = outcome.report_a.rows[i].deviation;
        row.dev_b = outcome.report_b.rows[i].deviation;
        if (outcome.compared) {
          row.status_a = outcome.report_a.rows[i].pass ? "pass" : "FAIL";
          row.status_b = outcome.report_b.rows[i].pass ? "ok" : "discrepancy";
        } else {
          row.status_a = row.status_b = "unit-variant";
        }
        outcome.rows.push_back(std::move(row));
      }
      return outcome;
    }

    std::string optional_fixed(const std::optional<double>& v, int digits) {
      return v ? fmt::format("{:.{}f}", *v, digits) : std::string("-");
    }

    void write_table_text(std::ostream& os, const TableKind& kind, const TableOutcome& t, const RunConfig& config) {
      const bool with_mn = kind.id == reference::TableId::I;
      const bool with_alt = kind.id == reference::TableId::II;
      os << fmt::format("{}; units {} (1 hartree = {} eV)\n", kind.title, to_string(config.units.label),
                        config.units.ev_per_hartree);
      os << fmt::format("basis: {} splines, order {}, r_max {}, {} knots, r_first {}, {} quadrature nodes/interval\n\n",
                        config.basis.n_splines, config.basis.order, config.basis.r_max,
                        bspline::to_string(config.basis.knots), config.basis.r_first,
                        config.basis.quadrature_nodes());
      os << fmt::format("{:<6}", kind.label_key);
      if (with_mn) os << fmt::format("{:>6}", "m/n");
      os << fmt::format("{:>11}{:>10}{:>9}  {:<13}{:>11}{:>10}{:>9}  {:<13}{:>10}", "model_A", "golden", "dev",
                        "status", "model_B", "golden", "dev", "status", with_alt ? "singlet" : "reference");
      if (with_alt) os << fmt::format("{:>10}", "triplet");
      os << '\n';
      for (const auto& r : t.rows) {
        os << fmt::format("{:<6}", r.label);
        if (with_mn) os << fmt::format("{:>6}", r.mn);
        os << fmt::format("{:>11.4f}{:>10.3f}{:>9.4f}  {:<13}{:>11.4f}{:>10.3f}{:>9.4f}  {:<13}{:>10}", r.model_a,
                          r.golden_a, r.dev_a, r.status_a, r.model_b, r.golden_b, r.dev_b, r.status_b,
                          optional_fixed(r.reference, 3));
        if (with_alt) os << fmt::format("{:>10}", optional_fixed(r.reference_alt, 3));
        os << '\n';
      }
      os << '\n';

      if (!t.compared) {
        os << "golden comparison skipped: the published tables use 1 hartree = "
           << UnitSystem::paper_compat_ev_per_hartree << " eV (run with --units paper)\n";
      } else {
        os << fmt::format("model A: {}/{} rows within +/-{} eV, max deviation {:.4f} eV\n",
                          t.report_a.rows.size() - t.report_a.failures, t.report_a.rows.size(), kind.tolerance_a,
                          t.report_a.max_deviation);
        for (const auto& label : t.report_a.failed_labels()) os << "  FAILED: " << label << '\n';
        os << fmt::format("model B discrepancy report (rows beyond +/-{} eV): ", model_b_tolerance);
        const auto failed_b = t.report_b.failed_labels();
        if (failed_b.empty()) os << "none\n";
        else {
          os << failed_b.size() << " of " << t.report_b.rows.size() << '\n';
          for (const auto& row : t.report_b.rows)
            if (!row.pass)
              os << fmt::format("  {:<6} computed {:>10.4f}  published {:>10.3f}  deviation {:.4f}\n", row.label,
                                row.computed, row.golden, row.deviation);
        }
      }

      os << "notes:\n";
      switch (kind.id) {
      case reference::TableId::I:
        os << "  He: 4|e_1s| - Z^2/2 (two-electron construction reverse-engineered from the published values)\n";
        if (config.mg_permutations == 3)
          os << "  Mg: m/n = 3/12; the published m/n column lists 2/12, which yields about 5.96 eV instead of 8.95 eV\n";
        else
          os << "  Mg: m/n = " << config.mg_permutations << "/12 override in effect\n";
        break;
      case reference::TableId::II:
        os << "  1s: 4|e_1s|; excited rows: frozen hydrogenic 1s (Z^2/2) plus |e| of the screened outer electron\n";
        break;
      case reference::TableId::III:
        os << "  scaled eigenvalues (m/n = 2/3)\n";
        break;
      }
    }

    void write_table_csv(std::ostream& os, const TableKind& kind, const TableOutcome& t) {
      const bool with_mn = kind.id == reference::TableId::I;
      const bool with_alt = kind.id == reference::TableId::II;
      os << kind.label_key << (with_mn ? ",mn" : "")
         << ",model_a_ev,model_b_ev,golden_a,golden_b,reference_ev" << (with_alt ? ",reference_alt_ev" : "")
         << ",dev_a,dev_b,status_a,status_b\n";
      for (const auto& r : t.rows) {
        os << r.label;
        if (with_mn) os << ',' << r.mn;
        os << fmt::format(",{:.6f},{:.6f},{},{},{}", r.model_a, r.model_b, r.golden_a_text, r.golden_b_text,
                          r.reference_text);
        if (with_alt) os << ',' << r.reference_alt_text;
        if (t.compared) os << fmt::format(",{:.6f},{:.6f}", r.dev_a, r.dev_b);
        else os << ",,";
        os << ',' << r.status_a << ',' << r.status_b << '\n';
      }
    }

    void write_table_json(std::ostream& os, const TableKind& kind, const TableOutcome& t) {
      using nlohmann::ordered_json;
      ordered_json rows = ordered_json::array();
      for (const auto& r : t.rows) {
        ordered_json row;
        row[std::string(kind.label_key)] = r.label;
        if (kind.id == reference::TableId::I) row["mn"] = r.mn;
        row["model_a_ev"] = r.model_a;
        row["model_b_ev"] = r.model_b;
        row["golden_a"] = r.golden_a;
        row["golden_b"] = r.golden_b;
        row["reference_ev"] = r.reference ? ordered_json(*r.reference) : ordered_json(nullptr);
        if (kind.id == reference::TableId::II)
          row["reference_alt_ev"] = r.reference_alt ? ordered_json(*r.reference_alt) : ordered_json(nullptr);
        row["dev_a"] = t.compared ? ordered_json(r.dev_a) : ordered_json(nullptr);
        row["dev_b"] = t.compared ? ordered_json(r.dev_b) : ordered_json(nullptr);
        row["status_a"] = r.status_a;
        row["status_b"] = r.status_b;
        rows.push_back(std::move(row));
      }
      os << rows.dump(2) << '\n';
    }

    int cmd_table(const TableKind& kind, const RunConfig& config, std::ostream& os) {
      const auto outcome = run_table(kind, config);
      switch (config.format) {
      case OutputFormat::Text: write_table_text(os, kind, outcome, config); break;
      case OutputFormat::Csv: write_table_csv(os, kind, outcome); break;
      case OutputFormat::Json: write_table_json(os, kind, outcome); break;
      }
      if (outcome.compared && !outcome.report_a.all_pass()) return exit_comparison_failed;
      return exit_ok;
    }

    // ---- solve ------------------------------------------------------------

    struct SolveArgs {
      int Z = 1;
      std::optional<int> electrons;
      int l = 0;
      int states = 1;
      std::optional<int> m;
    };

    int default_permutations(int n_electrons, int mg_permutations) {
      for (const auto& atom : atom_catalog(mg_permutations))
        if (atom.n_electrons == n_electrons) return atom.m_permutations;
      return n_electrons;
    }

    int cmd_solve(const SolveArgs& args, const RunConfig& config, std::ostream& os) {
      const int n = args.electrons.value_or(args.Z);
      if (args.Z < 1) throw ModelDomainError("Z must be a positive integer");
      if (n < 1) throw ModelDomainError("electron count must be positive");
      if (args.l < 0) throw ModelDomainError("l must be non-negative");
      if (args.states < 1) throw ConfigError("invalid value for 'states': must be >= 1");

      AtomSpec atom;
      atom.Z = args.Z;
      atom.n_electrons = n;
      atom.valence_nu = args.l + 1;
      atom.valence_l = args.l;
      atom.m_permutations = args.m.value_or(default_permutations(n, config.mg_permutations));
      atom.name = "Z=" + std::to_string(args.Z) + ",n=" + std::to_string(n);
      atom.validate();

      const RadialPotential potential(config.model, atom.Z, atom.n_electrons, args.l);
      const spectra::RadialSolver solver(config.basis);
      const auto states = solver.solve_channel(atom, config.model, args.l, args.states);

      std::optional<double> two_electron_ip;
      if (n == 2 && args.l == 0)
        two_electron_ip = config.units.to_ev(spectra::helium_ground_factor * std::abs(states.front().scaled_energy) -
                                             0.5 * atom.Z * atom.Z);

      switch (config.format) {
      case OutputFormat::Text: {
        os << fmt::format("Z = {}, electrons = {}, l = {}, model = {}, m/n = {}\n", atom.Z, n, args.l,
                          to_string(config.model), mn_label(atom));
        if (config.model == PotentialModel::SymmetryDependent) {
          if (n >= 2) os << fmt::format("alpha = {:.6f}\n", partition_alpha({args.l, n}));
          os << fmt::format("Z_eff = {:.6f}\n", potential.coulomb_charge());
        }
        os << fmt::format("{:>3}  {:<5}{:>22}{:>22}{:>14}\n", "nu", "state", "raw_hartree", "scaled_hartree", "scaled_ev");
        for (const auto& s : states)
          os << fmt::format("{:>3}  {:<5}{:>22.12f}{:>22.12f}{:>14.6f}\n", s.nu, state_label(s.nu, s.l), s.raw_energy,
                            s.scaled_energy, config.units.to_ev(s.scaled_energy));
        if (two_electron_ip)
          os << fmt::format("two-electron ionization potential 4|e_1s| - Z^2/2 = {:.6f} eV\n", *two_electron_ip);
        break;
      }
      case OutputFormat::Csv:
        os << "nu,l,state,raw_hartree,scaled_hartree,scaled_ev\n";
        for (const auto& s : states)
          os << fmt::format("{},{},{},{:.15e},{:.15e},{:.9f}\n", s.nu, s.l, state_label(s.nu, s.l), s.raw_energy,
                            s.scaled_energy, config.units.to_ev(s.scaled_energy));
        break;
      case OutputFormat::Json: {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& s : states) {
          nlohmann::ordered_json row;
          row["Z"] = atom.Z;
          row["electrons"] = n;
          row["model"] = to_string(config.model);
          row["nu"] = s.nu;
          row["l"] = s.l;
          row["state"] = state_label(s.nu, s.l);
          row["raw_hartree"] = s.raw_energy;
          row["scaled_hartree"] = s.scaled_energy;
          row["scaled_ev"] = config.units.to_ev(s.scaled_energy);
          row["z_eff"] = config.model == PotentialModel::CentralScreening ? nlohmann::ordered_json(nullptr)
                                                                          : nlohmann::ordered_json(potential.coulomb_charge());
          rows.push_back(std::move(row));
        }
        os << rows.dump(2) << '\n';
        break;
      }
      }
      return exit_ok;
    }

    // ---- converge ---------------------------------------------------------

    struct ConvergeArgs {
      std::string atom = "Li";
      std::optional<int> l, nu;
      std::string sweep_splines, sweep_nodes;
      std::optional<double> threshold;
    };

    int cmd_converge(const ConvergeArgs& args, const RunConfig& config, std::ostream& os) {
      if (args.sweep_splines.empty() == args.sweep_nodes.empty())
        throw ConfigError("converge needs exactly one of --sweep-splines or --sweep-nodes");
      const bool by_splines = !args.sweep_splines.empty();
      const auto points = by_splines ? parse_int_list("sweep-splines", args.sweep_splines)
                                     : parse_int_list("sweep-nodes", args.sweep_nodes);
      if (points.size() < 2) throw ConfigError("a convergence sweep needs at least two points");

      const auto atom = find_atom(args.atom, config.mg_permutations);
      if (!atom) throw ConfigError("unknown atom '" + args.atom + "' for 'atom'");
      const int l = args.l.value_or(atom->valence_l);
      const int nu = args.nu.value_or(atom->valence_nu);
      if (l < 0 || nu < l + 1) throw ConfigError("converge needs nu >= l + 1");
      const double threshold = args.threshold.value_or(by_splines ? 1e-9 : 1e-10);

      struct Point {
        int setting;
        double energy;
        std::optional<double> delta;
      };
      std::vector<Point> results;
      for (int p : points) {
        RunConfig c = config;
        if (by_splines) c.basis.n_splines = p;
        else c.basis.nodes_per_interval = p;
        validate(c);
        const spectra::RadialSolver solver(c.basis);
        const auto states = solver.solve_channel(*atom, config.model, l, nu - l);
        Point pt{p, states.back().raw_energy, std::nullopt};
        if (!results.empty()) pt.delta = std::abs(pt.energy - results.back().energy);
        results.push_back(pt);
      }
      const double last_delta = *results.back().delta;
      const bool pass = last_delta <= threshold;
      const std::string column = by_splines ? "splines" : "quad_nodes";

      switch (config.format) {
      case OutputFormat::Text:
        os << fmt::format("convergence of {} {} ({} model), raw eigenvalue in hartree\n", atom->name,
                          state_label(nu, l), to_string(config.model));
        os << fmt::format("{:>10}{:>26}{:>14}\n", column, "energy", "|delta|");
        for (const auto& pt : results)
          os << fmt::format("{:>10}{:>26.16e}{:>14}\n", pt.setting, pt.energy,
                            pt.delta ? fmt::format("{:.3e}", *pt.delta) : std::string("-"));
        os << fmt::format("final |delta| = {:.3e} hartree (threshold {:.1e}): {}\n", last_delta, threshold,
                          pass ? "pass" : "FAIL");
        break;
      case OutputFormat::Csv:
        os << column << ",energy_hartree,delta_hartree\n";
        for (const auto& pt : results)
          os << fmt::format("{},{:.16e},{}\n", pt.setting, pt.energy, pt.delta ? fmt::format("{:.6e}", *pt.delta) : "");
        break;
      case OutputFormat::Json: {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& pt : results) {
          nlohmann::ordered_json row;
          row[column] = pt.setting;
          row["energy_hartree"] = pt.energy;
          row["delta_hartree"] = pt.delta ? nlohmann::ordered_json(*pt.delta) : nlohmann::ordered_json(nullptr);
          rows.push_back(std::move(row));
        }
        os << rows.dump(2) << '\n';
        break;
      }
      }
      return pass ? exit_ok : exit_comparison_failed;
    }

    void add_common_options(CLI::App* sub, std::map<std::string, std::string>& flags, std::string& config_path) {
      auto store = [&flags](const std::string& key) {
        return [&flags, key](const std::string& value) { flags[key] = value; };
      };
      sub->add_option_function<std::string>("--splines", store("splines"), "number of B-splines (default 600)");
      sub->add_option_function<std::string>("--order", store("order"), "B-spline order (default 10)");
      sub->add_option_function<std::string>("--rmax", store("rmax"), "box radius in bohr (default 200)");
      sub->add_option_function<std::string>("--knots", store("knots"), "exp-linear | linear");
      sub->add_option_function<std::string>("--rfirst", store("rfirst"), "first breakpoint of exp-linear grid");
      sub->add_option_function<std::string>("--quad-nodes", store("quad_nodes"), "Gauss-Legendre nodes per interval");
      sub->add_option_function<std::string>("--units", store("units"), "paper | codata");
      sub->add_option_function<std::string>("--model", store("model"), "symmetry | central | bare");
      sub->add_option_function<std::string>("--format", store("format"), "text | csv | json");
      sub->add_option_function<std::string>("--out", store("out"), "write output to this file");
      sub->add_option_function<std::string>("--mg-mn", store("mg_mn"), "m for magnesium (2 or 3)");
      sub->add_option_function<std::string>("--reference", store("reference"), "reference table file");
      sub->add_option("--config", config_path, "key = value configuration file");
    }

    std::string read_file(const std::string& path) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot read config file '" + path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

  } // namespace

  const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{"splines", "order", "rmax",  "knots", "rfirst", "quad_nodes",
                                               "units",   "model", "format", "out",  "mg_mn",  "reference"};
    return keys;
  }

  void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view raw_value) {
    const std::string key = normalize_key(trim(raw_key));
    const std::string value = trim(raw_value);
    auto wrap = [&](auto&& fn) {
      try {
        fn();
      } catch (const std::exception& e) {
        throw ConfigError("invalid value '" + value + "' for '" + key + "': " + e.what());
      }
    };
    if (key == "splines") config.basis.n_splines = parse_number<int>(key, value);
    else if (key == "order") config.basis.order = parse_number<int>(key, value);
    else if (key == "rmax") config.basis.r_max = parse_number<double>(key, value);
    else if (key == "knots") wrap([&] { config.basis.knots = bspline::parse_knot_kind(value); });
    else if (key == "rfirst") config.basis.r_first = parse_number<double>(key, value);
    else if (key == "quad_nodes") config.basis.nodes_per_interval = parse_number<int>(key, value);
    else if (key == "units") wrap([&] { config.units = parse_unit_system(value); });
    else if (key == "model") wrap([&] { config.model = parse_model(value); });
    else if (key == "format") config.format = parse_format(value);
    else if (key == "out") config.out_path = value;
    else if (key == "mg_mn") config.mg_permutations = parse_number<int>(key, value);
    else if (key == "reference") config.reference_path = value;
    else throw ConfigError("unknown configuration key '" + key + "'");
  }

  std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> settings;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
      const std::string key = normalize_key(trim(std::string_view(line).substr(0, eq)));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty() || value.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
      if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
        throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      settings[key] = value;
    }
    if (settings.empty()) throw ConfigError("config file contains no settings");
    return settings;
  }

  void validate(const RunConfig& c) {
    const auto& b = c.basis;
    if (b.order < bspline::KnotBasis::min_order || b.order > bspline::KnotBasis::max_order)
      throw ConfigError("'order' must lie in [2, 15]");
    if (b.n_splines <= 2 * b.order) throw ConfigError("'splines' must exceed 2 * order");
    if (!(b.r_max > 0.0)) throw ConfigError("'rmax' must be positive");
    if (b.knots == bspline::KnotKind::ExpLinear && !(b.r_first > 0.0 && b.r_first < b.r_max))
      throw ConfigError("'rfirst' must lie in (0, rmax)");
    if (b.nodes_per_interval < 0) throw ConfigError("'quad_nodes' must be positive");
    if (c.mg_permutations != 2 && c.mg_permutations != 3) throw ConfigError("'mg_mn' must be 2 or 3");
  }

  RunConfig resolve_config(const std::map<std::string, std::string>& file_settings,
                           const std::map<std::string, std::string>& flag_settings) {
    RunConfig config;
    for (const auto& [k, v] : file_settings) apply_setting(config, k, v);
    for (const auto& [k, v] : flag_settings) apply_setting(config, k, v);
    validate(config);
    return config;
  }

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Screened one-electron pseudopotential spectra in a B-spline basis", "pseudoatom"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string config_path;

    auto* t1 = app.add_subcommand("table1", "ionization potentials of He..Mg");
    auto* t2 = app.add_subcommand("table2", "helium binding energies");
    auto* t3 = app.add_subcommand("table3", "lithium excited-state eigenvalues");
    auto* solve = app.add_subcommand("solve", "lowest states of one angular-momentum channel");
    auto* converge = app.add_subcommand("converge", "eigenvalue convergence against basis size or quadrature order");
    for (auto* sub : {t1, t2, t3, solve, converge}) add_common_options(sub, flags, config_path);

    SolveArgs solve_args;
    solve->add_option("--Z", solve_args.Z, "nuclear charge")->required();
    solve->add_option("--electrons", solve_args.electrons, "electron count (default Z)");
    solve->add_option("--l", solve_args.l, "angular momentum (default 0)");
    solve->add_option("--states", solve_args.states, "number of states (default 1)");
    solve->add_option("--m", solve_args.m, "permutation count m (default from the catalog)");

    ConvergeArgs conv_args;
    converge->add_option("--atom", conv_args.atom, "catalog atom (default Li)");
    converge->add_option("--l", conv_args.l, "angular momentum (default valence)");
    converge->add_option("--nu", conv_args.nu, "principal quantum number (default valence)");
    converge->add_option("--sweep-splines", conv_args.sweep_splines, "comma-separated spline counts");
    converge->add_option("--sweep-nodes", conv_args.sweep_nodes, "comma-separated quadrature node counts");
    converge->add_option("--threshold", conv_args.threshold, "pass threshold for the last |delta| in hartree");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
      return exit_usage;
    }

    try {
      std::map<std::string, std::string> file_settings;
      if (!config_path.empty()) file_settings = parse_config_text(read_file(config_path));
      const RunConfig config = resolve_config(file_settings, flags);

      std::ofstream file;
      if (!config.out_path.empty()) {
        file.open(config.out_path);
        if (!file) throw ConfigError("cannot open output file '" + config.out_path + "'");
      }
      std::ostream& os = config.out_path.empty() ? out : file;

      if (*t1) return cmd_table(table1_kind, config, os);
      if (*t2) return cmd_table(table2_kind, config, os);
      if (*t3) return cmd_table(table3_kind, config, os);
      if (*solve) return cmd_solve(solve_args, config, os);
      if (*converge) return cmd_converge(conv_args, config, os);
      return exit_usage;
    } catch (const ConfigError& e) {
      err << "configuration error: " << e.what() << '\n';
      return exit_usage;
    } catch (const ModelDomainError& e) {
      err << "model domain error: " << e.what() << '\n';
      return exit_usage;
    } catch (const FactorizationError& e) {
      err << "numerical failure: " << e.what() << '\n';
      return exit_comparison_failed;
    } catch (const ConvergenceError& e) {
      err << "numerical failure: " << e.what() << '\n';
      return exit_comparison_failed;
    } catch (const std::invalid_argument& e) {
      err << "invalid input: " << e.what() << '\n';
      return exit_usage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_comparison_failed;
    }
  }

} // namespace pseudoatom::cli
