#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permgrid/checks/acceptance.hpp"
#include "permgrid/class_expr.hpp"
#include "permgrid/enumerator.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"
#include "permgrid/merge.hpp"
#include "permgrid/search_budget.hpp"
#include "permgrid/spectral.hpp"

namespace permgrid::cli {

namespace {

using Json = nlohmann::ordered_json;

/// One result, rendered three ways from the same fields.
struct Output {
  Json data = Json::object();
  std::vector<std::string> header;  ///< csv table; a single row of `data` when empty
  std::vector<std::vector<std::string>> rows;
  std::optional<std::string> text;  ///< replaces the generic text rendering
};

struct Args {
  std::string class_text;
  std::string left;
  std::string right;
  std::string perm;
  std::string pattern;
  int max_len = 8;
  std::optional<int> steps;
  std::string kind = "inc";
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  std::string format = "text";
  double a = 1.0;
  double b = 2.0;
  double c = 1.0;
  double gr_c = 1.0;
  double gr_d = 1.0;
  int m = 1;
  std::string numerator;
  std::string denominator;
  int terms = 10;
  std::vector<int> only;
  bool extended = false;
};

std::string scalar_str(const Json& v, char sep) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += sep;
      s += scalar_str(v[i], sep);
    }
    return s;
  }
  return v.dump();
}

std::string render_text(const Output& o) {
  if (o.text) return *o.text;
  std::ostringstream s;
  for (const auto& [key, value] : o.data.items()) {
    if (value.is_array() && !value.empty() && value[0].is_object()) {
      s << key << ":\n";
      std::string head;
      for (const auto& [k, v] : value[0].items()) head += (head.empty() ? "  " : " ") + k;
      s << head << "\n";
      for (const auto& row : value) {
        std::string line;
        for (const auto& [k, v] : row.items()) line += (line.empty() ? "  " : " ") + scalar_str(v, ',');
        s << line << "\n";
      }
    } else {
      s << key << ": " << scalar_str(value, ',') << "\n";
    }
  }
  return s.str();
}

std::string render_csv(const Output& o) {
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s << (i ? "," : "") << cells[i];
    s << "\n";
  };
  if (!o.header.empty()) {
    line(o.header);
    for (const auto& row : o.rows) line(row);
    return s.str();
  }
  std::vector<std::string> keys;
  std::vector<std::string> values;
  for (const auto& [key, value] : o.data.items()) {
    keys.push_back(key);
    values.push_back(scalar_str(value, ';'));
  }
  line(keys);
  line(values);
  return s.str();
}

std::string real(double x) { return format_real(x); }

Json perms_json(const std::vector<Permutation>& perms) {
  Json a = Json::array();
  for (const auto& p : perms) a.push_back(p.str());
  return a;
}

std::vector<BigInt> parse_coefficients(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + item + "'", 0);
    }
  }
  if (out.empty()) throw ParseError("empty coefficient list", 0);
  return out;
}

Output sequence_output(const CountSequence& seq) {
  Output o;
  o.data = Json::parse(seq.to_json(), nullptr, true, false);
  o.header = {"n", "count"};
  for (std::size_t n = 0; n < seq.counts.size(); ++n) o.rows.push_back({std::to_string(n), seq.counts[n].str()});
  return o;
}

EnumerateOptions enum_options(const Args& a) {
  EnumerateOptions e;
  e.threads = a.threads;
  return e;
}

StaircaseKind parse_kind(const std::string& k) {
  if (k == "inc") return StaircaseKind::increasing;
  if (k == "spiral") return StaircaseKind::spiral;
  throw ParseError("staircase kind must be inc or spiral", 0);
}

std::optional<ClassExpr> optional_class(const std::string& text) {
  if (text == "E") return std::nullopt;
  return parse_class_expr(text);
}

Output cmd_contains(const Args& a) {
  const auto pattern = Permutation::parse(a.pattern);
  const auto host = Permutation::parse(a.perm);
  const bool result = contains(pattern, host);
  Output o;
  o.data["pattern"] = pattern.str();
  o.data["perm"] = host.str();
  o.data["contains"] = result;
  o.text = std::string(result ? "true" : "false") + "\n";
  return o;
}

Output cmd_enumerate(const Args& a) {
  return sequence_output(enumerate_class(parse_class_expr(a.class_text), a.max_len, enum_options(a)).sequence);
}

Output cmd_basis(const Args& a) {
  const auto expr = parse_class_expr(a.class_text);
  const auto basis = find_basis(expr, a.max_len, enum_options(a));
  Output o;
  o.data["class"] = expr.str();
  o.data["max_len"] = a.max_len;
  o.data["basis"] = perms_json(basis);
  o.header = {"basis_element"};
  for (const auto& p : basis) o.rows.push_back({p.str()});
  return o;
}

Output cmd_compare(const Args& a) {
  const auto left = parse_class_expr(a.left);
  const auto right = parse_class_expr(a.right);
  const auto r = compare_classes(left, right, a.max_len, enum_options(a));
  Output o;
  o.data["left"] = left.str();
  o.data["right"] = right.str();
  o.data["equal"] = r.equal;
  o.data["checked_through"] = r.checked_through;
  o.data["witness"] = r.witness ? Json(dsl_perm(*r.witness)) : Json(nullptr);
  o.data["witness_in"] = r.witness ? Json(r.witness_in_first ? "left" : "right") : Json(nullptr);
  return o;
}

Output cmd_merge_member(const Args& a) {
  const auto c = parse_class_expr(a.left);
  const auto d = parse_class_expr(a.right);
  const auto p = Permutation::parse(a.perm);
  const auto coloring = merge_coloring(c, d, p);
  Output o;
  o.data["left"] = c.str();
  o.data["right"] = d.str();
  o.data["perm"] = p.str();
  o.data["member"] = coloring.has_value();
  o.data["coloring"] = coloring ? Json(coloring->str()) : Json(nullptr);
  return o;
}

Output cmd_merge_count(const Args& a) {
  const auto merged = ClassExpr::merge(parse_class_expr(a.left), parse_class_expr(a.right));
  return sequence_output(enumerate_class(merged, a.max_len, enum_options(a)).sequence);
}

Output cmd_bound(const Args& a) {
  const auto c = parse_class_expr(a.left);
  const auto d = parse_class_expr(a.right);
  const auto cs = enumerate_class(c, a.max_len, enum_options(a)).sequence;
  const auto ds = enumerate_class(d, a.max_len, enum_options(a)).sequence;
  const auto ms = enumerate_class(ClassExpr::merge(c, d), a.max_len, enum_options(a)).sequence;
  Output o;
  o.data["left"] = c.str();
  o.data["right"] = d.str();
  Json rows = Json::array();
  o.header = {"n", "merge_count", "upper_bound"};
  for (std::size_t n = 0; n <= static_cast<std::size_t>(a.max_len); ++n) {
    const auto bound = merge_upper_bound(cs, ds, n);
    rows.push_back(Json{{"n", n}, {"merge_count", ms.counts[n].str()}, {"upper_bound", bound.str()}});
    o.rows.push_back({std::to_string(n), ms.counts[n].str(), bound.str()});
  }
  o.data["rows"] = rows;
  return o;
}

Output cmd_prop2(const Args& a) {
  const auto c = parse_class_expr(a.left);
  const auto d = parse_class_expr(a.right);
  const auto table = prop2_inequality_check(c, d, a.m, a.max_len, enum_options(a));
  Output o;
  o.data["left"] = c.str();
  o.data["right"] = d.str();
  o.data["m"] = a.m;
  bool all = true;
  Json rows = Json::array();
  o.header = {"n", "left_side", "merge_count", "binomial_sum", "right_side", "holds"};
  for (const auto& r : table) {
    all = all && r.holds;
    rows.push_back(Json{{"n", r.n},
                        {"left_side", r.upper_bound_sum.str()},
                        {"merge_count", r.merge_count.str()},
                        {"binomial_sum", r.binomial_sum.str()},
                        {"right_side", r.right.str()},
                        {"holds", r.holds}});
    o.rows.push_back({std::to_string(r.n), r.upper_bound_sum.str(), r.merge_count.str(), r.binomial_sum.str(),
                      r.right.str(), r.holds ? "true" : "false"});
  }
  o.data["holds"] = all;
  o.data["rows"] = rows;
  return o;
}

Json divisions_json(const std::vector<std::size_t>& d) {
  Json a = Json::array();
  for (auto x : d) a.push_back(x);
  return a;
}

Output cmd_grid_member(const Args& a) {
  const auto expr = parse_class_expr(a.class_text);
  if (expr.kind() != ClassKind::grid) throw DomainError("--class must be a grid(...) or staircase(...) expression");
  const auto p = Permutation::parse(a.perm);
  const auto g = gridding_exists(expr.matrix(), p);
  Output o;
  o.data["class"] = expr.str();
  o.data["perm"] = p.str();
  o.data["member"] = g.has_value();
  o.data["column_divisions"] = g ? divisions_json(g->column_divisions) : Json(nullptr);
  o.data["row_divisions"] = g ? divisions_json(g->row_divisions) : Json(nullptr);
  return o;
}

GridMatrix staircase_matrix(const Args& a) {
  if (!a.steps) throw DomainError("--steps is required");
  if (*a.steps < 1) throw DomainError("--steps must be at least 1");
  return build_staircase({parse_kind(a.kind), parse_class_expr(a.left), optional_class(a.right),
                          static_cast<std::size_t>(*a.steps)});
}

Json path_json(const GridMatrix& m) {
  Json path = Json::array();
  for (const auto& cell : m.path()) path.push_back(Json::array({cell.column, cell.row}));
  return path;
}

Output cmd_staircase_build(const Args& a) {
  const auto m = staircase_matrix(a);
  Output o;
  o.data["staircase"] = m.str();
  o.data["grid"] = m.grid_str();
  o.data["columns"] = m.columns();
  o.data["rows"] = m.rows();
  o.data["path"] = path_json(m);
  o.header = {"label", "column", "row"};
  for (std::size_t i = 0; i < m.path().size(); ++i) {
    o.rows.push_back({i % 2 == 0 ? "C" : "D", std::to_string(m.path()[i].column), std::to_string(m.path()[i].row)});
  }
  return o;
}

Output cmd_staircase_validate(const Args& a) {
  const auto m = staircase_matrix(a);
  const auto v = validate_staircase(m);
  Output o;
  o.data["staircase"] = m.str();
  o.data["valid"] = v.ok;
  o.data["diagnostic"] = v.diagnostic;
  return o;
}

Output cmd_staircase_enumerate(const Args& a) {
  std::optional<std::size_t> steps;
  if (a.steps) {
    if (*a.steps < 1) throw DomainError("--steps must be at least 1");
    steps = static_cast<std::size_t>(*a.steps);
  }
  return sequence_output(staircase_counts(parse_kind(a.kind), parse_class_expr(a.left), optional_class(a.right),
                                          steps, a.max_len, enum_options(a))
                             .sequence);
}

Output cmd_toeplitz(const Args& a) {
  if (!a.steps) throw DomainError("--steps (the dimension t) is required");
  if (*a.steps < 1) throw DomainError("--steps must be at least 1");
  const auto values =
      toeplitz_eigenvalues(ToeplitzSpec<double>{a.a, a.b, a.c, static_cast<std::size_t>(*a.steps)});
  Output o;
  o.data["a"] = real(a.a);
  o.data["b"] = real(a.b);
  o.data["c"] = real(a.c);
  o.data["t"] = *a.steps;
  Json ev = Json::array();
  o.header = {"j", "eigenvalue"};
  for (std::size_t j = 0; j < values.size(); ++j) {
    ev.push_back(real(values[j]));
    o.rows.push_back({std::to_string(j + 1), real(values[j])});
  }
  o.data["eigenvalues"] = ev;
  return o;
}

Output cmd_staircase_gr(const Args& a) {
  if (!a.steps) throw DomainError("--steps is required");
  if (*a.steps < 1) throw DomainError("--steps must be at least 1");
  const auto t = static_cast<std::size_t>(*a.steps);
  const double formula = t_step_staircase_gr(a.gr_c, a.gr_d, t);
  const double iterated = top_eigenvalue(staircase_gamma<double>(StaircaseKind::increasing, a.gr_c, a.gr_d, t));
  Output o;
  o.data["gr_c"] = real(a.gr_c);
  o.data["gr_d"] = real(a.gr_d);
  o.data["t"] = t;
  o.data["formula"] = real(formula);
  o.data["power_iteration"] = real(iterated);
  o.data["limit"] = real(merge_gr_bound(a.gr_c, a.gr_d));
  return o;
}

Output cmd_merge_gr_bound(const Args& a) {
  Output o;
  o.data["gr_c"] = real(a.gr_c);
  o.data["gr_d"] = real(a.gr_d);
  o.data["bound"] = real(merge_gr_bound(a.gr_c, a.gr_d));
  return o;
}

Output cmd_series(const Args& a) {
  const auto coefficients =
      rational_series(parse_coefficients(a.numerator), parse_coefficients(a.denominator), a.terms);
  Output o;
  o.data["numerator"] = a.numerator;
  o.data["denominator"] = a.denominator;
  Json arr = Json::array();
  o.header = {"n", "coefficient"};
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    arr.push_back(coefficients[n].str());
    o.rows.push_back({std::to_string(n), coefficients[n].str()});
  }
  o.data["coefficients"] = arr;
  return o;
}

Output cmd_reproduce(const Args& a, std::ostream& out, std::ostream& err, bool& all_passed) {
  checks::AcceptanceOptions opt;
  opt.only = a.only;
  opt.extended = a.extended;
  opt.threads = a.threads;
  const bool stream = a.format == "text";
  opt.on_result = [&](const checks::CriterionResult& r) {
    if (stream) out << checks::format_result(r) << std::flush;
    err << "criterion " << r.id << " took " << format_real(r.seconds) << " s\n";
  };
  const auto results = checks::run_acceptance(opt);
  Output o;
  Json rows = Json::array();
  std::size_t passed = 0;
  o.header = {"id", "name", "passed", "detail"};
  for (const auto& r : results) {
    passed += r.passed;
    Json notes = Json::array();
    for (const auto& n : r.notes) notes.push_back(n);
    rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"notes", notes}});
    o.rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false", "\"" + r.detail + "\""});
  }
  o.data["criteria"] = rows;
  o.data["passed"] = passed;
  o.data["total"] = results.size();
  all_passed = passed == results.size();
  o.text = std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  return o;
}

std::optional<std::uint64_t> env_budget() {
  const char* env = std::getenv("PERMGRID_BUDGET");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const auto value = std::strtoull(env, &end, 10);
  if (*end != '\0' || value == 0) throw CLI::ValidationError("PERMGRID_BUDGET", "must be a positive integer");
  return value;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation classes: enumeration, merges, grid classes, staircases and growth rates", "permgrid"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", a.budget, "node budget per search")->check(CLI::PositiveNumber);
    sub->add_option("--threads", a.threads, "worker threads for enumeration")->check(CLI::Range(1u, 256u));
    sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_max_len = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--max-len", a.max_len, "largest length")->check(CLI::Range(0, kMaxLenCap));
    if (required) opt->required();
  };
  auto add_class = [&](CLI::App* sub) { sub->add_option("--class", a.class_text, "class expression")->required(); };
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--left", a.left, "left class expression")->required();
    sub->add_option("--right", a.right, "right class expression")->required();
  };

  std::vector<std::pair<CLI::App*, std::function<Output()>>> commands;
  auto command = [&](const char* name, const char* help, std::function<Output()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };

  auto* contains_cmd = command("contains", "pattern containment", [&] { return cmd_contains(a); });
  contains_cmd->add_option("--pattern", a.pattern)->required();
  contains_cmd->add_option("--perm", a.perm)->required();

  auto* enumerate_cmd = command("enumerate", "count a class by length", [&] { return cmd_enumerate(a); });
  add_class(enumerate_cmd);
  add_max_len(enumerate_cmd, true);

  auto* basis_cmd = command("basis", "minimal non-members up to --max-len", [&] { return cmd_basis(a); });
  add_class(basis_cmd);
  add_max_len(basis_cmd, true);

  auto* compare_cmd = command("compare", "compare two classes level by level", [&] { return cmd_compare(a); });
  add_pair(compare_cmd);
  add_max_len(compare_cmd, true);

  auto* mm_cmd = command("merge-member", "merge membership with a witness coloring", [&] { return cmd_merge_member(a); });
  add_pair(mm_cmd);
  mm_cmd->add_option("--perm", a.perm)->required();

  auto* mc_cmd = command("merge-count", "count the merge of two classes", [&] { return cmd_merge_count(a); });
  add_pair(mc_cmd);
  add_max_len(mc_cmd, true);

  auto* bound_cmd = command("bound", "evaluate the binomial merge upper bound", [&] { return cmd_bound(a); });
  add_pair(bound_cmd);
  add_max_len(bound_cmd, true);

  auto* p2_cmd = command("prop2-check", "finite-intersection counting inequality", [&] { return cmd_prop2(a); });
  add_pair(p2_cmd);
  add_max_len(p2_cmd, true);
  p2_cmd->add_option("--m", a.m, "longest common length of the two classes")->required()->check(CLI::NonNegativeNumber);

  auto* gm_cmd = command("grid-member", "grid class membership with a witness gridding", [&] { return cmd_grid_member(a); });
  add_class(gm_cmd);
  gm_cmd->add_option("--perm", a.perm)->required();

  CLI::App* stair = app.add_subcommand("staircase", "staircase matrices");
  stair->require_subcommand(1);
  auto stair_command = [&](const char* name, const char* help, std::function<Output()> fn) {
    CLI::App* sub = stair->add_subcommand(name, help);
    add_common(sub);
    sub->add_option("--kind", a.kind, "inc or spiral")->check(CLI::IsMember({"inc", "spiral"}));
    sub->add_option("--left", a.left, "C class")->required();
    sub->add_option("--right", a.right, "D class, E for empty")->required();
    sub->add_option("--steps", a.steps, "number of steps t");
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };
  stair_command("build", "print the staircase matrix", [&] { return cmd_staircase_build(a); });
  stair_command("validate", "check the staircase axioms", [&] { return cmd_staircase_validate(a); });
  auto* se = stair_command("enumerate", "count the staircase class; without --steps, length n uses n steps",
                           [&] { return cmd_staircase_enumerate(a); });
  add_max_len(se, true);

  auto* toe_cmd = command("toeplitz", "tridiagonal Toeplitz eigenvalues", [&] { return cmd_toeplitz(a); });
  toe_cmd->add_option("--a", a.a, "subdiagonal");
  toe_cmd->add_option("--b", a.b, "diagonal");
  toe_cmd->add_option("--c", a.c, "superdiagonal");
  toe_cmd->add_option("--steps", a.steps, "dimension t")->required();

  auto* sgr_cmd = command("staircase-gr", "growth rate of a t-step staircase", [&] { return cmd_staircase_gr(a); });
  sgr_cmd->add_option("--gr-c", a.gr_c)->required();
  sgr_cmd->add_option("--gr-d", a.gr_d)->required();
  sgr_cmd->add_option("--steps", a.steps)->required();

  auto* mgb_cmd = command("merge-gr-bound", "(sqrt(x)+sqrt(y))^2", [&] { return cmd_merge_gr_bound(a); });
  mgb_cmd->add_option("--gr-c", a.gr_c)->required();
  mgb_cmd->add_option("--gr-d", a.gr_d)->required();

  auto* series_cmd = command("series", "Taylor coefficients of a rational function", [&] { return cmd_series(a); });
  series_cmd->add_option("--num", a.numerator, "numerator coefficients, e.g. 1,-2")->required();
  series_cmd->add_option("--den", a.denominator, "denominator coefficients, e.g. 1,-3,1")->required();
  series_cmd->add_option("--terms", a.terms)->check(CLI::Range(0, 10000));

  bool all_passed = true;
  auto* repro = command("reproduce", "run the acceptance suite",
                        [&] { return cmd_reproduce(a, out, err, all_passed); });
  repro->add_option("--only", a.only, "criterion ids")->delimiter(',')->check(CLI::Range(1, checks::kCriterionCount));
  repro->add_flag("--extended", a.extended, "include the longer basis sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto budget = a.budget ? a.budget : env_budget();
    set_default_node_budget(budget.value_or(kDefaultNodeBudget));
    for (auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      const Output o = fn();
      if (a.format == "json") {
        out << o.data.dump() << "\n";
      } else if (a.format == "csv") {
        out << render_csv(o);
      } else {
        out << render_text(o);
      }
      if (sub == repro && !all_passed) return kExitDomain;
      return kExitOk;
    }
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* partial = dynamic_cast<const EnumerationIncomplete*>(&e)) {
      err << "completed through length " << partial->partial().max_len << "\n";
    }
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace permgrid::cli
