#include "uclosed/cli.hpp"

#include "uclosed/condition1.hpp"
#include "uclosed/error.hpp"
#include "uclosed/family.hpp"
#include "uclosed/json_io.hpp"
#include "uclosed/search.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace uclosed::cli {

using io::Json;

namespace {

std::string join_sets(const Family& fam) {
  std::string s;
  for (SetMask m : fam) {
    if (!s.empty()) s += ' ';
    s += to_string(m);
  }
  return s;
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << x;
  return ss.str();
}

std::string counts_line(const FrequencyVector& fv) {
  std::string s;
  for (auto c : fv.counts) {
    if (!s.empty()) s += ' ';
    s += std::to_string(c);
  }
  return s;
}

std::string fraction(const ReimerVerdict& r) {
  return std::to_string(r.average_num) + "/" + std::to_string(r.average_den);
}

Json pair_json(const std::optional<std::pair<SetMask, SetMask>>& w) {
  if (!w) return nullptr;
  return Json::array({io::to_json(w->first), io::to_json(w->second)});
}

Json check_json(const CertificateCheck& c) {
  Json j{{"valid", c.valid}, {"interval_checks", c.interval_checks}};
  if (!c.valid) {
    j["clause"] = std::string(clause_name(*c.violated));
    j["detail"] = c.detail;
    j["first"] = c.first ? Json(*c.first + 1) : Json(nullptr);
    j["second"] = c.second ? Json(*c.second + 1) : Json(nullptr);
  }
  return j;
}

void print_certificate(std::ostream& out, const Certificate& cert) {
  for (const auto& p : cert.pairs)
    out << "  " << std::left << std::setw(22) << to_string(p.set) << " -> " << describe_within(p.image, cert.ground_size)
        << '\n';
}

int cmd_check(const std::string& path, bool json, std::ostream& out) {
  const Family fam = io::parse_family(io::read_file(path));
  const UnionClosure uc = is_union_closed(fam);
  const FilterCheck fc = is_filter(fam);
  const FrequencyVector fv = frequency_vector(fam);
  const bool frankl_scope = in_frankl_scope(fam);
  std::optional<FranklVerdict> fr;
  if (frankl_scope) fr.emplace(frankl_check(fam));
  const std::optional<ReimerVerdict> rb = fam.empty() ? std::nullopt : std::optional(reimer_bound_holds(fam));
  const bool decidable = fam.ground_size() <= kMaxDecisionGround;
  const std::optional<Certificate> cert = decidable ? find_certificate(fam) : std::nullopt;

  if (json) {
    Json j{{"family", io::to_json(fam)},
           {"size", fam.size()},
           {"union_closed", {{"value", uc.closed}, {"witness", pair_json(uc.witness)}}},
           {"filter", {{"value", fc.filter}, {"witness", pair_json(fc.witness)}}},
           {"frequency", io::to_json(fv)}};
    if (fr)
      j["frankl"] = {{"value", fr->holds},
                     {"status", fr->holds ? "holds" : "fails"},
                     {"element", fr->element + 1},
                     {"count", fr->count}};
    else
      j["frankl"] = {{"value", nullptr}, {"status", "out of scope"}};
    if (rb)
      j["reimer"] = {{"value", rb->holds},
                     {"total_size", rb->total_size},
                     {"average", fraction(*rb)},
                     {"average_value", rb->average},
                     {"threshold", rb->threshold}};
    else
      j["reimer"] = {{"value", nullptr}, {"status", "undefined for the empty family"}};
    if (!decidable)
      j["condition1"] = {{"value", nullptr}, {"status", "skipped (n > 12)"}};
    else if (cert)
      j["condition1"] = {{"value", true}, {"status", "certificate"}, {"certificate", io::to_json(*cert)}};
    else
      j["condition1"] = {{"value", false}, {"status", "none (exhaustive)"}};
    out << j.dump(2) << '\n';
    return kPass;
  }

  out << "family on [" << fam.ground_size() << "], " << fam.size() << " sets\n";
  out << "  union-closed:  ";
  if (uc) out << "yes\n";
  else
    out << "no (" << to_string(uc.witness->first) << " | " << to_string(uc.witness->second) << " = "
        << to_string(uc.witness->first | uc.witness->second) << " is missing)\n";
  out << "  filter:        ";
  if (fc) out << "yes\n";
  else out << "no (" << to_string(fc.witness->second) << " contains " << to_string(fc.witness->first) << " but is missing)\n";
  out << "  frequencies:   " << counts_line(fv) << '\n';
  out << "  half element:  ";
  if (!fr) out << "out of scope (family is empty or {{}})\n";
  else
    out << (fr->holds ? "yes" : "no") << " (element " << fr->element + 1 << " in " << fr->count << " of " << fam.size()
        << ")\n";
  out << "  Reimer bound:  ";
  if (!rb) out << "undefined for the empty family\n";
  else
    out << (rb->holds ? "holds" : "fails") << " (average " << fraction(*rb) << " = " << fixed(rb->average)
        << (rb->holds ? " >= " : " < ") << "log2(" << fam.size() << ")/2 = " << fixed(rb->threshold) << ")\n";
  out << "  Condition 1:   ";
  if (!decidable) out << "skipped (n > " << kMaxDecisionGround << ")\n";
  else if (!cert) out << "no (exhaustive)\n";
  else {
    out << "yes\n";
    print_certificate(out, *cert);
  }
  return kPass;
}

int cmd_certify(const std::string& family_path, const std::string& cert_path, bool json, std::ostream& out) {
  const Family fam = io::parse_family(io::read_file(family_path));
  if (!cert_path.empty()) {
    const Certificate cert = io::parse_certificate(io::read_file(cert_path));
    if (cert.ground_size != fam.ground_size()) throw ParseError("certificate and family have different ground sizes");
    const CertificateCheck check = verify_certificate(fam, cert);
    if (json) {
      out << check_json(check).dump(2) << '\n';
    } else if (check) {
      out << "valid (" << check.interval_checks << " pairwise interval checks)\n";
    } else {
      out << "invalid: clause " << clause_name(*check.violated) << ": " << check.detail << '\n';
    }
    return check ? kPass : kNegative;
  }
  const std::optional<Certificate> cert = find_certificate(fam);
  if (json) {
    out << (cert ? io::to_json(*cert) : Json{{"certificate", nullptr}, {"status", "none (exhaustive)"}}).dump(2) << '\n';
  } else if (cert) {
    out << "certificate found\n";
    print_certificate(out, *cert);
  } else {
    out << "none (exhaustive)\n";
  }
  return cert ? kPass : kNegative;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& spec) {
  std::vector<std::pair<int, int>> pairs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("pair \"" + item + "\" must look like i,j");
    try {
      std::size_t used_i = 0, used_j = 0;
      const std::string left = item.substr(0, comma), right = item.substr(comma + 1);
      const int i = std::stoi(left, &used_i), j = std::stoi(right, &used_j);
      if (used_i != left.size() || used_j != right.size()) throw std::invalid_argument(item);
      pairs.emplace_back(i, j);
    } catch (const std::logic_error&) {
      throw ParseError("pair \"" + item + "\" must look like i,j");
    }
  }
  return pairs;
}

SearchShape shape_from_flags(int n, const std::string& pairs_spec, const std::string& shape_path) {
  if (!shape_path.empty()) return io::parse_shape(io::read_file(shape_path));
  if (n < 2 || n > kMaxGround) throw ParseError("--n must lie in 2.." + std::to_string(kMaxGround));
  std::vector<std::pair<int, int>> zero_based;
  for (auto [i, j] : parse_pairs(pairs_spec)) {
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("pair elements must lie in [" + std::to_string(n) + "]");
    zero_based.emplace_back(i - 1, j - 1);
  }
  try {
    return SearchShape(n, std::move(zero_based));
  } catch (const InvalidFamily& e) {
    throw ParseError(e.what());
  }
}

std::string report_line(const CounterexampleReport& r) {
  return join_sets(r.family) + "  | max frequency " + std::to_string(r.max_frequency) + " of " +
         std::to_string(r.family.size());
}

int cmd_search(const SearchShape& shape, std::optional<std::size_t> limit, unsigned workers, bool canonical, bool json,
               bool stream, std::ostream& out, std::ostream& err) {
  SearchOptions options;
  options.limit = limit;
  options.workers = workers;
  options.canonical = canonical;
  if (stream) options.on_found = [&err](const CounterexampleReport& r) { err << "found: " << report_line(r) << '\n'; };

  const auto start = std::chrono::steady_clock::now();
  const SearchOutcome outcome = search_counterexamples(shape, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream summary;
  summary << outcome.reports.size() << (canonical ? " isomorphism classes" : " reports") << " (" << outcome.raw_count
          << " raw) for " << io::to_json(shape).dump() << " in " << fixed(seconds, 2) << " s";
  if (json) {
    Json reports = Json::array();
    for (const auto& r : outcome.reports) reports.push_back(io::to_json(r));
    const Json j{{"shape", io::to_json(shape)},
                 {"canonical", canonical},
                 {"count", outcome.reports.size()},
                 {"raw_count", outcome.raw_count},
                 {"reports", std::move(reports)}};
    out << j.dump(2) << '\n';
    err << summary.str() << '\n';
  } else {
    for (std::size_t i = 0; i < outcome.reports.size(); ++i)
      out << '#' << i + 1 << ": " << report_line(outcome.reports[i]) << '\n';
    out << summary.str() << '\n';
  }
  return outcome.reports.empty() ? kNegative : kPass;
}

// Role label of a pair in the canonical certificate on [n].
std::string role(const CertificatePair& p, int n) {
  const SetMask missing = SetMask::full(n) - p.image;
  if (missing.empty()) return "A0";
  const auto e = missing.elements();
  if (e.size() == 1) return "A" + std::to_string(e[0]);
  std::string s = "B";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

int cmd_demo(bool json, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const CounterexampleReport r = build_paper_counterexample();
  const int n = r.family.ground_size();
  const CertificateCheck check = verify_certificate(r.family, r.certificate);

  std::size_t note2_ok = 0, note2_total = 0;
  const auto& pairs = r.certificate.pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j, ++note2_total)
      note2_ok += note2_compatible(pairs[i].set, pairs[i].image, pairs[j].set, pairs[j].image) ? 1 : 0;
  const FranklVerdict fr = frankl_check(r.family);
  const ReimerVerdict rb = reimer_bound_holds(r.family);
  const bool all_fives = r.frequency.counts == std::vector<std::uint32_t>(8, 5);
  const bool passed = check.valid && check.interval_checks == 55 && note2_ok == note2_total && all_fives &&
                      r.max_frequency == 5 && 2 * r.max_frequency < r.family.size() && !fr.holds && rb.holds &&
                      rb.average_num == 40 && rb.average_den == 11;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (json) {
    Json j = io::to_json(r);
    j["checks"] = {{"certificate", check_json(check)},
                   {"note2_pairs", note2_total},
                   {"note2_compatible", note2_ok},
                   {"half_element", fr.holds},
                   {"reimer", {{"value", rb.holds}, {"average", fraction(rb)}, {"threshold", rb.threshold}}},
                   {"passed", passed}};
    out << j.dump(2) << '\n';
    return passed ? kPass : kInternal;
  }

  std::vector<CertificatePair> by_role(pairs.begin(), pairs.end());
  std::stable_sort(by_role.begin(), by_role.end(), [n](const CertificatePair& x, const CertificatePair& y) {
    const int mx = (SetMask::full(n) - x.image).size(), my = (SetMask::full(n) - y.image).size();
    return mx != my ? mx < my : (SetMask::full(n) - x.image).bits() < (SetMask::full(n) - y.image).bits();
  });
  out << "Family on [" << n << "] with " << r.family.size() << " sets and its certificate:\n";
  for (const auto& p : by_role)
    out << "  " << std::left << std::setw(6) << role(p, n) << std::setw(20) << to_string(p.set) << " -> "
        << describe_within(p.image, n) << '\n';
  out << "certificate: " << (check ? "valid" : "INVALID") << " (" << check.interval_checks
      << " pairwise interval checks)\n";
  out << "pairwise form: " << note2_ok << " of " << note2_total << " pairs have A\\F_B or B\\F_A nonempty\n";
  out << "frequencies: " << counts_line(r.frequency) << '\n';
  out << "max frequency " << r.max_frequency << " of " << r.family.size() << " -- no element is in half the sets\n";
  out << "Reimer bound: average " << fraction(rb) << " = " << fixed(rb.average) << (rb.holds ? " >= " : " < ")
      << "log2(" << r.family.size() << ")/2 = " << fixed(rb.threshold) << " (" << (rb.holds ? "holds" : "fails") << ")\n";
  out << (passed ? "all checks passed" : "SELF-CHECK FAILED") << " in " << fixed(seconds * 1000.0, 3) << " ms\n";
  return passed ? kPass : kInternal;
}

int cmd_enumerate(int n, unsigned workers, bool json, std::ostream& out) {
  const ConjectureSweep sweep = enumerate_conjecture(n, workers);
  if (json) {
    Json violations = Json::array();
    for (const auto& f : sweep.violations) violations.push_back(io::to_json(f));
    out << Json{{"ground", n},
                {"scanned", sweep.scanned},
                {"certified", sweep.certified},
                {"violations", std::move(violations)}}
               .dump(2)
        << '\n';
  } else {
    out << "n = " << n << ": " << sweep.scanned << " families scanned, " << sweep.certified
        << " satisfy Condition 1, " << sweep.violations.size() << " violations\n";
    for (const auto& f : sweep.violations) out << "  violation: " << join_sets(f) << '\n';
  }
  return sweep.violations.empty() ? kPass : kNegative;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Condition 1 / union-closed families: verification and counterexample search", "uclosed"};
  app.require_subcommand(1);
  bool json = false;

  std::string family_path, cert_path;
  auto* check = app.add_subcommand("check", "Report every verdict for a family");
  check->add_option("family", family_path, "Family JSON file")->required();
  check->add_flag("--json", json, "Machine-readable output");

  auto* certify = app.add_subcommand("certify", "Verify a certificate, or decide Condition 1 if none is given");
  certify->add_option("family", family_path, "Family JSON file")->required();
  certify->add_option("certificate", cert_path, "Certificate JSON file");
  certify->add_flag("--json", json, "Machine-readable output");

  int n = 8;
  std::string pairs_spec = "1,2:3,4", shape_path;
  std::optional<std::size_t> limit;
  unsigned workers = 1;
  bool canonical = false, stream = false;
  auto* search = app.add_subcommand("search", "Structured counterexample search");
  search->add_option("--n", n, "Ground set size (<= 10)");
  search->add_option("--pairs", pairs_spec, "Missing pairs, e.g. 1,2:3,4");
  search->add_option("--shape", shape_path, "Shape JSON file (overrides --n/--pairs)");
  search->add_option("--limit", limit, "Keep only the first N reports in canonical order");
  search->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
  search->add_flag("--canonical", canonical, "One report per isomorphism class");
  search->add_flag("--stream", stream, "Print reports to stderr as they are found");
  search->add_flag("--json", json, "Machine-readable output");

  auto* demo = app.add_subcommand("demo", "Rebuild and check the 11-set family on [8]");
  demo->add_flag("--json", json, "Machine-readable output");

  int sweep_n = 3;
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive sweep over all families on [n], n <= 4");
  enumerate->add_option("--n", sweep_n, "Ground set size (1..4)")->required();
  enumerate->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
  enumerate->add_flag("--json", json, "Machine-readable output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*check) return cmd_check(family_path, json, out);
    if (*certify) return cmd_certify(family_path, cert_path, json, out);
    if (*search) {
      const SearchShape shape = shape_from_flags(n, pairs_spec, shape_path);
      return cmd_search(shape, limit, workers, canonical, json, stream, out, err);
    }
    if (*demo) return cmd_demo(json, out);
    if (*enumerate) {
      if (sweep_n < 1 || sweep_n > kMaxSweepGround) {
        err << "error: --n must lie in 1.." << kMaxSweepGround << '\n';
        return kUsage;
      }
      return cmd_enumerate(sweep_n, workers, json, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceGuard& e) {
    err << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

} // namespace uclosed::cli
