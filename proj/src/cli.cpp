#include "stehfest/cli.hpp"

#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "stehfest/coeffs.hpp"
#include "stehfest/lambertw.hpp"
#include "stehfest/verify.hpp"

namespace stehfest {

namespace {

using json = nlohmann::ordered_json;

const std::regex kDecimal(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
const std::regex kRational(R"(^[+-]?\d+/\d+$)");

bool is_number(const std::string& text) {
  std::smatch m;
  if (std::regex_match(text, kRational)) return true;
  return std::regex_match(text, m, kDecimal) && (m[2].length() > 0 || m[3].length() > 0);
}

HPReal parse_real(const std::string& text, const PrecisionContext& ctx, const std::string& what) {
  if (!is_number(text)) throw std::invalid_argument(what + ": not a number: " + text);
  return ctx.real(text);
}

struct Common {
  std::string digits = "auto";
  std::string output;
  std::string out_path;
};

int resolve_digits(const std::string& text, int n_max, std::ostream& err, bool& allow_low) {
  allow_low = false;
  if (text == "auto") return auto_digits(n_max);
  int digits = 0;
  std::size_t used = 0;
  try {
    digits = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw std::invalid_argument("--digits must be 'auto' or an integer, got " + text);
  if (digits < PrecisionContext::kMinDigits)
    throw std::invalid_argument("--digits must be at least " + std::to_string(PrecisionContext::kMinDigits));
  if (digits < required_digits(n_max)) {
    err << "warning: " << digits << " digits is below the " << required_digits(n_max) << " needed for order " << n_max
        << "; expect cancellation error\n";
    allow_low = true;
  }
  return digits;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + out_path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const TransformPair& select_pair(const std::string& pair_name, const std::string& selector, TransformPair& storage) {
  if (!pair_name.empty()) return find_pair(pair_name);
  storage = parse_transform_selector(selector);
  return storage;
}

std::string ladder_text(const InversionReport& r) {
  std::ostringstream os;
  os << "# " << r.label << " x=" << r.x.to_string(r.digits_used) << " digits=" << r.digits_used;
  if (r.oscillatory) os << " oscillatory";
  os << '\n';
  for (const LadderEntry& e : r.entries) {
    os << e.n << "  " << e.value.to_string(r.digits_used);
    if (e.abs_error) os << "  " << e.abs_error->to_string(6);
    os << '\n';
  }
  return os.str();
}

std::string render_coeffs(int n, const std::string& kind, int max_order, const std::string& output) {
  std::vector<BigRational> a, c;
  if (kind != "c") a = gaver_stehfest_coeffs(n, max_order).a;
  if (kind != "a") c = stehfest_weights(n, max_order).c;
  if (output == "json") {
    json j;
    j["n"] = n;
    if (kind != "c") {
      j["a"] = json::array();
      for (const BigRational& q : a) j["a"].push_back(to_exact_string(q));
    }
    if (kind != "a") {
      j["c"] = json::array();
      for (const BigRational& q : c) j["c"].push_back(to_exact_string(q));
    }
    return dump(j);
  }
  std::ostringstream os;
  if (output == "csv") os << "kind,k,value\n";
  auto rows = [&](const char* name, const std::vector<BigRational>& values) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (output == "csv") os << name << ',' << k + 1 << ',' << to_exact_string(values[k]) << '\n';
      else os << name << '_' << k + 1 << '(' << n << ") = " << to_exact_string(values[k]) << '\n';
    }
  };
  rows("a", a);
  rows("c", c);
  return os.str();
}

std::string render_corpus(const std::string& output) {
  if (output == "json") return dump(corpus_manifest());
  std::ostringstream os;
  if (output == "csv") os << "name,class,oscillatory,transform,original\n";
  for (const TransformPair& p : corpus()) {
    if (output == "csv")
      os << p.name << ',' << to_string(p.cls) << ',' << (p.F.oscillatory ? "true" : "false") << ",\""
         << p.transform_formula << "\",\"" << p.original_formula << "\"\n";
    else
      os << p.name << "  [" << to_string(p.cls) << "]  F(z) = " << p.transform_formula << "  f(x) = " << p.original_formula
         << '\n';
  }
  return os.str();
}

}  // namespace

BigRational parse_exact_decimal(const std::string& text) {
  if (std::regex_match(text, kRational)) return parse_rational(text[0] == '+' ? text.substr(1) : text);
  std::smatch m;
  if (!std::regex_match(text, m, kDecimal) || (m[2].length() == 0 && m[3].length() == 0))
    throw std::invalid_argument("not a number: " + text);
  std::string digits = m[2].str() + m[3].str();
  long exponent = (m[4].matched ? std::stol(m[4].str()) : 0L) - static_cast<long>(m[3].length());
  BigInteger mantissa(digits.empty() ? "0" : digits, 10);
  if (m[1] == "-") mantissa = -mantissa;
  BigRational q = exponent >= 0 ? BigRational(mantissa * ipow(10, static_cast<unsigned long>(exponent)))
                                : BigRational(mantissa, ipow(10, static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return q;
}

TransformPair parse_transform_selector(const std::string& selector) {
  auto colon = selector.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("transform selector must be name:param, got " + selector);
  const std::string name = selector.substr(0, colon);
  const BigRational p = parse_exact_decimal(selector.substr(colon + 1));
  TransformPair t;
  t.name = selector;
  if (name == "constant") {
    t.F = {[p](const HPReal& z, const PrecisionContext& ctx) { return ctx.real(p) / z; }, selector};
    t.f_ref = [p](const HPReal&, const PrecisionContext& ctx) { return ctx.real(p); };
    t.transform_formula = to_exact_string(p) + "/z";
    t.original_formula = to_exact_string(p);
    return t;
  }
  if (name == "inv-power") {
    if (p.get_den() != 1 || p < 1 || p > 40) throw std::invalid_argument("inv-power needs an integer 1 <= k <= 40");
    const long k = p.get_num().get_si();
    t.F = {[k](const HPReal& z, const PrecisionContext&) { return 1L / pow(z, k); }, selector};
    t.f_ref = [k](const HPReal& x, const PrecisionContext& ctx) {
      return pow(x, k - 1) / ctx.real(factorial(static_cast<unsigned long>(k - 1)));
    };
    t.transform_formula = "1/z^" + std::to_string(k);
    t.original_formula = "x^" + std::to_string(k - 1) + "/" + std::to_string(k - 1) + "!";
    return t;
  }
  if (name == "shifted-exp") {
    t.F = {[p](const HPReal& z, const PrecisionContext& ctx) { return 1L / (z + ctx.real(p)); }, selector};
    t.f_ref = [p](const HPReal& x, const PrecisionContext& ctx) { return exp(-ctx.real(p) * x); };
    t.transform_formula = "1/(z+" + to_exact_string(p) + ")";
    t.original_formula = "exp(-" + to_exact_string(p) + " x)";
    return t;
  }
  if (name == "delayed-step") {
    if (p < 0) throw std::invalid_argument("delayed-step needs a >= 0");
    t.F = {[p](const HPReal& z, const PrecisionContext& ctx) { return exp(-ctx.real(p) * z) / z; }, selector};
    t.f_ref = [p](const HPReal& x, const PrecisionContext& ctx) {
      return ctx.real(x >= ctx.real(p) ? 1L : 0L);
    };
    t.cls = p > 0 ? RegularityClass::bounded_variation_jump : RegularityClass::smooth;
    if (p > 0) t.jumps = {Jump{p, 0, 1}};
    t.transform_formula = "exp(-" + to_exact_string(p) + " z)/z";
    t.original_formula = "1 if x >= " + to_exact_string(p) + " else 0";
    return t;
  }
  throw std::invalid_argument("unknown transform '" + name + "' (constant, inv-power, shifted-exp, delayed-step)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision Gaver-Stehfest inversion of Laplace transforms", "stehfest"};
  app.require_subcommand(1);
  const std::vector<std::string> outputs{"json", "csv", "text"};

  // coeffs
  int coeffs_n = 0, max_order = kDefaultMaxOrder;
  std::string kind = "all";
  Common coeffs_opts{"auto", "json", ""};
  auto* coeffs = app.add_subcommand("coeffs", "Export exact a_k(n) and c_k(n) as p/q strings");
  coeffs->add_option("--n", coeffs_n, "Order n")->required()->check(CLI::PositiveNumber);
  coeffs->add_option("--kind", kind, "a, c or all")->check(CLI::IsMember({"a", "c", "all"}));
  coeffs->add_option("--max-order", max_order, "Largest accepted order")->check(CLI::PositiveNumber);
  coeffs->add_option("--output", coeffs_opts.output)->check(CLI::IsMember(outputs));
  coeffs->add_option("--out", coeffs_opts.out_path, "Write the report here instead of stdout");

  // invert
  std::string inv_pair, inv_transform, inv_x;
  int inv_n = 0, inv_n_max = 0;
  Common inv_opts{"auto", "csv", ""};
  auto* invert = app.add_subcommand("invert", "f_n(x) at one order (--n) or the ladder 1..n_max (--n-max)");
  auto* ip = invert->add_option("--pair", inv_pair, "Corpus pair name");
  auto* it = invert->add_option("--transform", inv_transform, "constant:c, inv-power:k, shifted-exp:a, delayed-step:a");
  ip->excludes(it);
  invert->add_option("--x", inv_x, "Evaluation point x > 0")->required();
  auto* in = invert->add_option("--n", inv_n, "Single order")->check(CLI::PositiveNumber);
  auto* inm = invert->add_option("--n-max", inv_n_max, "Largest order of the ladder")->check(CLI::PositiveNumber);
  in->excludes(inm);
  invert->add_option("--digits", inv_opts.digits, "auto or decimal digits");
  invert->add_option("--output", inv_opts.output)->check(CLI::IsMember(outputs));
  invert->add_option("--out", inv_opts.out_path, "Write the report here instead of stdout");

  // ladder
  std::string lad_pair, lad_transform;
  std::vector<std::string> lad_x;
  int lad_n_max = 0, lad_n_min = 1;
  Common lad_opts{"auto", "csv", ""};
  auto* ladder = app.add_subcommand("ladder", "Ladders n = n_min..n_max at one or more points");
  auto* lp = ladder->add_option("--pair", lad_pair, "Corpus pair name");
  auto* lt = ladder->add_option("--transform", lad_transform, "constant:c, inv-power:k, shifted-exp:a, delayed-step:a");
  lp->excludes(lt);
  ladder->add_option("--x", lad_x, "Evaluation points x > 0")->required()->delimiter(',');
  ladder->add_option("--n-max", lad_n_max, "Largest order")->required()->check(CLI::PositiveNumber);
  ladder->add_option("--n-min", lad_n_min, "Smallest order")->check(CLI::PositiveNumber);
  ladder->add_option("--digits", lad_opts.digits, "auto or decimal digits");
  ladder->add_option("--output", lad_opts.output)->check(CLI::IsMember(outputs));
  ladder->add_option("--out", lad_opts.out_path, "Write the report here instead of stdout");

  // corpus
  Common corpus_opts{"auto", "json", ""};
  auto* corpus_cmd = app.add_subcommand("corpus", "List the built-in transform pairs");
  corpus_cmd->add_option("--output", corpus_opts.output)->check(CLI::IsMember(outputs));
  corpus_cmd->add_option("--out", corpus_opts.out_path, "Write the manifest here instead of stdout");

  // verify
  std::string suite = "all";
  Common verify_opts{"auto", "json", ""};
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.insert(suite_choices.begin(), "all");
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "all or one suite")->check(CLI::IsMember(suite_choices));
  verify->add_option("--output", verify_opts.output)->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", verify_opts.out_path, "Write the report here instead of stdout");

  // weval
  std::string w_re, w_im = "0", w_method = "auto";
  Common w_opts{"30", "json", ""};
  auto* weval = app.add_subcommand("weval", "Principal Lambert W at a complex point");
  weval->add_option("--z", w_re, "Real part")->required();
  weval->add_option("--im", w_im, "Imaginary part");
  weval->add_option("--digits", w_opts.digits, "Decimal digits (auto = 30)");
  weval->add_option("--method", w_method)->check(CLI::IsMember({"auto", "taylor", "branch", "halley"}));
  weval->add_option("--output", w_opts.output)->check(CLI::IsMember({"json", "text"}));
  weval->add_option("--out", w_opts.out_path, "Write the result here instead of stdout");

  auto usage_error = [&](const std::string& message) {
    err << "error: " << message << "\n";
    auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  try {
    if (coeffs->parsed()) {
      emit(render_coeffs(coeffs_n, kind, max_order, coeffs_opts.output), coeffs_opts.out_path, out);
      return kExitOk;
    }

    if (invert->parsed() || ladder->parsed()) {
      const bool single = invert->parsed();
      const std::string& pair_name = single ? inv_pair : lad_pair;
      const std::string& selector = single ? inv_transform : lad_transform;
      const Common& opts = single ? inv_opts : lad_opts;
      if (pair_name.empty() && selector.empty()) return usage_error("one of --pair or --transform is required");
      if (single && inv_n == 0 && inv_n_max == 0) return usage_error("one of --n or --n-max is required");
      const int n_max = single ? std::max(inv_n, inv_n_max) : lad_n_max;
      LadderOptions options;
      options.n_min = single ? (inv_n > 0 ? inv_n : 1) : lad_n_min;
      if (options.n_min > n_max) return usage_error("--n-min exceeds --n-max");
      const int digits = resolve_digits(opts.digits, n_max, err, options.allow_low_precision);
      PrecisionContext ctx(digits);
      TransformPair storage;
      const TransformPair& pair = select_pair(pair_name, selector, storage);
      std::vector<std::string> xs = single ? std::vector<std::string>{inv_x} : lad_x;
      std::vector<InversionReport> reports;
      for (const std::string& text : xs) {
        HPReal x = parse_real(text, ctx, "--x");
        if (!(x > 0L)) return usage_error("--x must be positive, got " + text);
        reports.push_back(run_pair(pair, x, n_max, ctx, options));
      }
      std::string body;
      if (opts.output == "json") {
        if (single) {
          body = dump(to_json(reports.front()));
        } else {
          json arr = json::array();
          for (const InversionReport& r : reports) arr.push_back(to_json(r));
          body = dump(arr);
        }
      } else if (opts.output == "csv") {
        if (single) {
          body = to_csv(reports.front());
        } else {
          std::ostringstream os;
          os << "x,n,value,abs_error,digits\n";
          for (const InversionReport& r : reports) {
            std::istringstream rows(to_csv(r));
            std::string line;
            std::getline(rows, line);
            while (std::getline(rows, line)) os << r.x.to_string(r.digits_used) << ',' << line << '\n';
          }
          body = os.str();
        }
      } else {
        for (const InversionReport& r : reports) body += ladder_text(r);
      }
      emit(body, opts.out_path, out);
      return kExitOk;
    }

    if (corpus_cmd->parsed()) {
      emit(render_corpus(corpus_opts.output), corpus_opts.out_path, out);
      return kExitOk;
    }

    if (verify->parsed()) {
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      std::vector<CheckResult> results = run_suites(names);
      bool all_passed = true;
      std::string body;
      if (verify_opts.output == "json") {
        json arr = json::array();
        for (const CheckResult& r : results) arr.push_back(to_json(r));
        body = dump(arr);
      } else {
        for (const CheckResult& r : results) body += (r.passed ? "PASS  " : "FAIL  ") + r.check + "\n";
      }
      for (const CheckResult& r : results) all_passed = all_passed && r.passed;
      emit(body, verify_opts.out_path, out);
      return all_passed ? kExitOk : kExitCheckFailed;
    }

    if (weval->parsed()) {
      const int digits = w_opts.digits == "auto" ? 30 : std::stoi(w_opts.digits);
      if (w_opts.digits != "auto" && std::to_string(digits) != w_opts.digits)
        return usage_error("--digits must be 'auto' or an integer");
      PrecisionContext ctx(digits);
      HPComplex z(parse_real(w_re, ctx, "--z"), parse_real(w_im, ctx, "--im"));
      WMethod method = w_method == "taylor"   ? WMethod::taylor
                       : w_method == "branch" ? WMethod::branch_series
                       : w_method == "halley" ? WMethod::halley
                                              : WMethod::automatic;
      HPComplex w = lambert_w0(z, ctx, method);
      HPReal residual = lambert_residual(w, z, ctx);
      std::string body;
      if (w_opts.output == "json") {
        json j;
        j["z"] = {{"re", z.re.to_string(digits)}, {"im", z.im.to_string(digits)}};
        j["w"] = {{"re", w.re.to_string(digits)}, {"im", w.im.to_string(digits)}};
        j["residual"] = residual.to_string(6);
        j["region_a"] = in_region_a(w);
        j["digits"] = digits;
        j["method"] = w_method;
        body = dump(j);
      } else {
        body = "W(" + z.to_string(digits) + ") = " + w.to_string(digits) + "\nresidual " + residual.to_string(6) + "\n";
      }
      emit(body, w_opts.out_path, out);
      return kExitOk;
    }
  } catch (const std::logic_error& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return usage_error("no subcommand");
}

}  // namespace stehfest
