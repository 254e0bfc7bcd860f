#include "cli.hpp"

#include "mahonian/diagnostics.hpp"
#include "mahonian/foata.hpp"
#include "mahonian/gaussian.hpp"
#include "mahonian/genpoly.hpp"
#include "mahonian/interpolation.hpp"
#include "mahonian/moments.hpp"
#include "mahonian/sampling.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>

#ifndef MAHONIAN_VERSION
#define MAHONIAN_VERSION "0.0.0"
#endif

namespace mahonian::cli {

const char* version() { return MAHONIAN_VERSION; }

namespace {

using Json = nlohmann::ordered_json;
using Row = std::vector<std::string>;

struct Report {
  Json config = Json::object();
  Json payload = Json::object();
  Row csv_header;
  std::vector<Row> csv_rows;
};

struct Options {
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> multiplicities;
  std::vector<std::uint32_t> scales;
  std::vector<std::string> orders;
  std::vector<std::string> two_letter;
  std::vector<Letter> word;
  std::string format = "json";
  std::string variance, covariance;
  unsigned threads = 1;
  unsigned max_order = kDefaultMomentOrder;
  unsigned alphabet = 0;
  unsigned grid = 14;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 100000;
  std::uint64_t words = 0;
  std::uint64_t budget = kDefaultStateBudget;
  int ending = 0;
  bool center = false;
  bool factorial = false;
  bool inverse = false;
  bool sample_mean = false;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string frac(const Rational& v) { return to_fraction_string(v); }

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string word_string(std::span<const Letter> w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(w[k]);
  }
  return s;
}

OrderList parse_orders(const std::vector<std::string>& items) {
  OrderList out;
  for (const auto& item : items) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("order '" + item + "' is not of the form r:s");
    try {
      std::size_t used = 0;
      const unsigned long r = std::stoul(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const std::string tail = item.substr(colon + 1);
      const unsigned long s = std::stoul(tail, &used);
      if (used != tail.size() || item[0] == '-' || tail[0] == '-') throw std::invalid_argument(item);
      out.emplace_back(static_cast<unsigned>(r), static_cast<unsigned>(s));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("order '" + item + "' is not of the form r:s");
    }
  }
  return out;
}

Json orders_json(const OrderList& orders) {
  Json j = Json::array();
  for (const auto& [r, s] : orders) j.push_back(std::to_string(r) + ":" + std::to_string(s));
  return j;
}

Json counts_json(const Composition& a) { return Json(a.counts()); }

OrderList orders_or(const Options& o, OrderList fallback) {
  return o.orders.empty() ? fallback : parse_orders(o.orders);
}

// ---------------------------------------------------------------------------

Report cmd_dist(const Options& o) {
  const Composition a(o.counts);
  Report rep;
  rep.config["counts"] = counts_json(a);
  if (o.ending) rep.config["ending"] = o.ending;
  rep.config["state_budget"] = o.budget;
  const auto f = o.ending ? joint_gf_by_ending(a, o.ending, o.budget) : joint_gf(a, o.budget);
  rep.payload["total"] = f.at_one().get_str();
  Json terms = Json::array();
  rep.csv_header = {"inv", "maj", "count"};
  for (const auto& [key, c] : f.terms()) {
    terms.push_back({{"inv", key.first}, {"maj", key.second}, {"count", c.get_str()}});
    rep.csv_rows.push_back({str(key.first), str(key.second), c.get_str()});
  }
  rep.payload["terms"] = std::move(terms);
  return rep;
}

Report cmd_qmultinomial(const Options& o) {
  const Composition a(o.counts);
  Report rep;
  rep.config["counts"] = counts_json(a);
  const auto g = q_multinomial(a);
  rep.payload["degree"] = g.degree();
  rep.payload["total"] = g.at_one().get_str();
  Json coeffs = Json::array();
  rep.csv_header = {"degree", "coefficient"};
  for (const auto& [k, c] : g.terms()) {
    coeffs.push_back({{"degree", k}, {"coefficient", c.get_str()}});
    rep.csv_rows.push_back({str(k), c.get_str()});
  }
  rep.payload["coefficients"] = std::move(coeffs);
  return rep;
}

Report cmd_moments(const Options& o) {
  const Composition a(o.counts);
  const unsigned R = o.max_order;
  check_moment_order(R);
  const MomentKind kind = o.factorial ? MomentKind::factorial : o.center ? MomentKind::central : MomentKind::raw;
  Report rep;
  rep.config["counts"] = counts_json(a);
  rep.config["max_order"] = R;
  rep.config["kind"] = to_string(kind);
  if (o.ending) rep.config["ending"] = o.ending;
  rep.config["state_budget"] = o.budget;

  MomentTable raw = o.ending ? ending_class_moments(a, o.ending, R, o.budget) : class_moments(a, R, o.budget);
  const Rational mu = o.ending ? class_mean(a, o.ending) : mean(a);
  MomentTable table = raw;
  if (kind != MomentKind::raw) table = centralize(raw, mu);
  if (kind == MomentKind::factorial) table = to_factorial(table);

  rep.payload["scope"] = o.ending ? "ending_class" : "full_class";
  rep.payload["mean"] = frac(mu);
  Json rows = Json::array();
  rep.csv_header = {"r", "s", "kind", "value"};
  for (const auto& [rs, v] : table.entries) {
    rows.push_back({{"r", rs.first}, {"s", rs.second}, {"value", frac(v)}});
    rep.csv_rows.push_back({str(rs.first), str(rs.second), to_string(kind), frac(v)});
  }
  rep.payload["moments"] = std::move(rows);
  return rep;
}

Report cmd_rho(const Options& o) {
  if (o.counts.empty() == o.multiplicities.empty())
    throw std::invalid_argument("rho needs exactly one of --counts or --multiplicities");
  Report rep;
  rep.csv_header = {"mode", "rho", "variance", "covariance"};
  if (!o.counts.empty()) {
    const Composition a(o.counts);
    rep.config["counts"] = counts_json(a);
    rep.config["state_budget"] = o.budget;
    const auto c = central_class_moments(a, 2, o.budget);
    const auto rho = exact_correlation(c);
    rep.payload["mode"] = "exact";
    rep.payload["rho"] = frac(rho);
    rep.payload["variance"] = frac(c.at(2, 0));
    rep.payload["covariance"] = frac(c.at(1, 1));
    rep.csv_rows.push_back({"exact", frac(rho), frac(c.at(2, 0)), frac(c.at(1, 1))});
  } else {
    const Composition m(o.multiplicities);
    rep.config["multiplicities"] = counts_json(m);
    const auto rho = asymptotic_correlation(m);
    const auto V = asymptotic_variance(m), C = asymptotic_covariance(m);
    rep.payload["mode"] = "asymptotic";
    rep.payload["rho"] = frac(rho);
    rep.payload["variance"] = frac(V);
    rep.payload["covariance"] = frac(C);
    rep.csv_rows.push_back({"asymptotic", frac(rho), frac(V), frac(C)});
  }
  return rep;
}

Report cmd_gaussian(const Options& o) {
  const int sources = (!o.variance.empty() || !o.covariance.empty()) + !o.multiplicities.empty() + !o.two_letter.empty();
  if (sources != 1)
    throw std::invalid_argument("gaussian needs exactly one of --variance/--covariance, --multiplicities, --two-letter");
  Report rep;
  std::optional<std::pair<Rational, Rational>> ab;
  GaussianSpec g(0, 0);
  if (!o.multiplicities.empty()) {
    const Composition m(o.multiplicities);
    rep.config["multiplicities"] = counts_json(m);
    g = GaussianSpec(asymptotic_variance(m), asymptotic_covariance(m));
  } else if (!o.two_letter.empty()) {
    if (o.two_letter.size() != 2) throw std::invalid_argument("--two-letter takes exactly two values a,b");
    ab.emplace(parse_fraction(o.two_letter[0]), parse_fraction(o.two_letter[1]));
    if (ab->first <= 0 || ab->second <= 0) throw std::invalid_argument("--two-letter values must be positive");
    rep.config["two_letter"] = {frac(ab->first), frac(ab->second)};
    g = GaussianSpec::two_letter(ab->first, ab->second);
  } else {
    if (o.variance.empty() || o.covariance.empty())
      throw std::invalid_argument("--variance and --covariance must be given together");
    g = GaussianSpec(parse_fraction(o.variance), parse_fraction(o.covariance));
    rep.config["variance"] = frac(g.variance);
    rep.config["covariance"] = frac(g.covariance);
  }
  OrderList orders;
  if (o.orders.empty()) {
    for (unsigned r = 0; r <= o.max_order; ++r)
      for (unsigned s = 0; r + s <= o.max_order; ++s) orders.emplace_back(r, s);
    rep.config["max_order"] = o.max_order;
  } else {
    orders = parse_orders(o.orders);
    rep.config["orders"] = orders_json(orders);
  }

  rep.payload["variance"] = frac(g.variance);
  rep.payload["covariance"] = frac(g.covariance);
  RecurrenceMoments recurrence(g);
  Json rows = Json::array();
  rep.csv_header = {"r", "s", "isserlis", "recurrence", "d2_closed_form", "agree"};
  for (const auto& [r, s] : orders) {
    const auto iss = isserlis_moment(r, s, g);
    const auto rec = recurrence(r, s);
    bool agree = iss == rec;
    Json row{{"r", r}, {"s", s}, {"isserlis", frac(iss)}, {"recurrence", frac(rec)}};
    std::string closed;
    if (ab && (r + s) % 2 == 0) {
      const auto d2 = d2_closed_form(r, s, ab->first, ab->second);
      agree = agree && d2 == iss;
      closed = frac(d2);
      row["d2_closed_form"] = closed;
    }
    row["agree"] = agree;
    rows.push_back(std::move(row));
    rep.csv_rows.push_back({str(r), str(s), frac(iss), frac(rec), closed, agree ? "true" : "false"});
  }
  rep.payload["moments"] = std::move(rows);
  return rep;
}

Report cmd_converge(const Options& o) {
  const Composition m(o.multiplicities);
  const auto orders = orders_or(o, {{1, 1}, {2, 0}, {2, 1}, {2, 2}});
  Report rep;
  rep.config["multiplicities"] = counts_json(m);
  rep.config["scales"] = o.scales;
  rep.config["orders"] = orders_json(orders);
  rep.config["state_budget"] = o.budget;
  const auto scan = convergence_scan(m, orders, o.scales, o.threads, o.budget);
  rep.payload["limit_correlation"] = frac(scan.limit_correlation);
  Json rows = Json::array();
  rep.csv_header = {"scale", "r", "s", "moment", "moment_exact", "limit", "abs_error", "abs_error_exact"};
  for (const auto& row : scan.rows) {
    const std::string exact = row.moment.exact ? frac(*row.moment.exact) : "";
    const std::string err_exact = row.abs_error_exact ? frac(*row.abs_error_exact) : "";
    Json j{{"scale", row.scale}, {"r", row.r}, {"s", row.s}, {"moment", row.moment.value}};
    j["moment_exact"] = row.moment.exact ? Json(exact) : Json(nullptr);
    j["limit"] = frac(row.limit);
    j["abs_error"] = row.abs_error;
    j["abs_error_exact"] = row.abs_error_exact ? Json(err_exact) : Json(nullptr);
    rows.push_back(std::move(j));
    rep.csv_rows.push_back({str(row.scale), str(row.r), str(row.s), num(row.moment.value), exact, frac(row.limit),
                            num(row.abs_error), err_exact});
  }
  rep.payload["rows"] = std::move(rows);
  return rep;
}

Report cmd_lemma_check(const Options& o) {
  const std::size_t d = o.alphabet ? o.alphabet : 2;
  const auto orders = orders_or(o, {{1, 1}});
  Report rep;
  rep.config["alphabet"] = d;
  rep.config["orders"] = orders_json(orders);
  rep.config["grid"] = o.grid;
  rep.config["state_budget"] = o.budget;
  Json fits = Json::array();
  rep.csv_header = {"r", "s", "ending", "degree", "fit_points", "held_out", "nonzero_residuals", "exact_fit",
                    "is_polynomial"};
  for (const auto& [r, s] : orders) {
    const auto fit = lemma_interpolation_check(d, r, s, o.grid, o.budget);
    Json j{{"r", r},
           {"s", s},
           {"grid_points", fit.grid_points},
           {"degree_bound", fit.degree_bound},
           {"monomial_count", fit.monomial_count},
           {"denominator_order", fit.denominator_order},
           {"exact_fit", fit.exact_fit},
           {"is_polynomial", fit.is_polynomial}};
    Json endings = Json::array();
    for (const auto& e : fit.endings) {
      std::size_t nonzero = 0;
      Json residuals = Json::array();
      for (const auto& v : e.held_out_residuals) {
        if (v != 0) ++nonzero;
        residuals.push_back(frac(v));
      }
      Json coeffs = Json::array();
      for (std::size_t k = 0; k < e.numerator.monomials.size(); ++k)
        if (e.numerator.coefficients[k] != 0)
          coeffs.push_back({{"exponent", e.numerator.monomials[k]}, {"coefficient", frac(e.numerator.coefficients[k])}});
      endings.push_back({{"ending", e.ending},
                         {"degree", e.numerator.degree()},
                         {"fit_points", e.fit_points},
                         {"exact_fit", e.exact_fit},
                         {"is_polynomial", e.is_polynomial},
                         {"numerator", std::move(coeffs)},
                         {"held_out_residuals", std::move(residuals)}});
      rep.csv_rows.push_back({str(r), str(s), std::to_string(e.ending), std::to_string(e.numerator.degree()),
                              str(e.fit_points), str(e.held_out_residuals.size()), str(nonzero),
                              e.exact_fit ? "true" : "false", e.is_polynomial ? "true" : "false"});
    }
    j["endings"] = std::move(endings);
    fits.push_back(std::move(j));
  }
  rep.payload["fits"] = std::move(fits);
  return rep;
}

Report cmd_normality(const Options& o) {
  const Composition a(o.counts);
  Report rep;
  rep.config["counts"] = counts_json(a);
  const auto res = marginal_normality_stat(a);
  rep.payload["distance"] = res.distance;
  rep.payload["at_value"] = res.at_value;
  rep.payload["mean"] = frac(res.mean);
  rep.payload["variance"] = frac(res.variance);
  rep.payload["cdf_method"] = res.cdf_method;
  rep.csv_header = {"n", "distance", "at_value", "mean", "variance"};
  rep.csv_rows.push_back({str(a.total()), num(res.distance), str(res.at_value), frac(res.mean), frac(res.variance)});
  return rep;
}

Report cmd_sample(const Options& o) {
  const Composition a(o.counts);
  Report rep;
  rep.config["counts"] = counts_json(a);
  rep.config["seed"] = o.seed;
  if (o.words) {
    rep.config["words"] = o.words;
    rep.config["generator"] = "mt19937_64 seeded by splitmix64(seed, index)";
    Json ws = Json::array();
    rep.csv_header = {"index", "word"};
    for (std::uint64_t k = 0; k < o.words; ++k) {
      const auto w = sample_word(a, stream_seed(o.seed, k));
      ws.push_back(std::vector<Letter>(w.letters().begin(), w.letters().end()));
      rep.csv_rows.push_back({str(k), word_string(w.letters())});
    }
    rep.payload["words"] = std::move(ws);
    return rep;
  }
  const auto orders = orders_or(o, {{1, 1}, {2, 0}, {2, 2}});
  EmpiricalOptions opt;
  opt.centering = o.sample_mean ? Centering::sample_mean : Centering::exact_mean;
  opt.threads = o.threads;
  opt.state_budget = o.budget;
  rep.config["samples"] = o.samples;
  rep.config["orders"] = orders_json(orders);
  rep.config["centering"] = to_string(opt.centering);
  rep.config["state_budget"] = o.budget;
  rep.config["generator"] = "mt19937_64, chunk streams seeded by splitmix64(seed, chunk)";
  const auto res = empirical_moments(a, orders, o.samples, o.seed, opt);
  rep.payload["scaling"] = to_string(res.scaling);
  rep.payload["mu"] = res.mu;
  rep.payload["sigma"] = res.sigma;
  Json rows = Json::array();
  rep.csv_header = {"r", "s", "central", "central_se", "standardized", "standardized_se"};
  for (const auto& row : res.rows) {
    rows.push_back({{"r", row.r},
                    {"s", row.s},
                    {"central", row.central},
                    {"central_se", row.central_se},
                    {"standardized", row.standardized},
                    {"standardized_se", row.standardized_se}});
    rep.csv_rows.push_back({str(row.r), str(row.s), num(row.central), num(row.central_se), num(row.standardized),
                            num(row.standardized_se)});
  }
  rep.payload["rows"] = std::move(rows);
  return rep;
}

Report cmd_foata(const Options& o) {
  const Word w = o.alphabet ? Word(o.word, static_cast<int>(o.alphabet)) : Word::from_letters(o.word);
  const Word img = o.inverse ? foata_inverse(w) : foata_transform(w);
  Report rep;
  rep.config["word"] = o.word;
  rep.config["alphabet"] = w.alphabet_size();
  rep.config["inverse"] = o.inverse;
  auto as_vec = [](const Word& x) { return std::vector<Letter>(x.letters().begin(), x.letters().end()); };
  rep.payload["input"] = as_vec(w);
  rep.payload["output"] = as_vec(img);
  rep.payload["input_inv"] = inversion_number(w);
  rep.payload["input_maj"] = major_index(w);
  rep.payload["output_inv"] = inversion_number(img);
  rep.payload["output_maj"] = major_index(img);
  rep.csv_header = {"input", "output"};
  rep.csv_rows.push_back({word_string(w.letters()), word_string(img.letters())});
  return rep;
}

Report cmd_residual(const Options& o) {
  const Composition a(o.counts);
  const unsigned R = o.max_order;
  Report rep;
  rep.config["counts"] = counts_json(a);
  rep.config["max_order"] = R;
  if (o.ending) rep.config["ending"] = o.ending;
  std::vector<Letter> endings;
  if (o.ending) {
    endings.push_back(o.ending);
  } else {
    for (std::size_t k = 1; k <= a.dimension(); ++k) endings.push_back(static_cast<Letter>(k));
  }
  Json rows = Json::array();
  bool corrected_vanishes = true;
  rep.csv_header = {"ending", "r", "s", "corrected", "literal"};
  for (Letter i : endings)
    for (unsigned r = 0; r <= R; ++r)
      for (unsigned s = 0; r + s <= R; ++s) {
        const auto c = fm_recurrence_residual(a, i, r, s, ResidualVariant::corrected, o.budget);
        const auto l = fm_recurrence_residual(a, i, r, s, ResidualVariant::literal_offset, o.budget);
        corrected_vanishes = corrected_vanishes && c == 0;
        rows.push_back({{"ending", i}, {"r", r}, {"s", s}, {"corrected", frac(c)}, {"literal", frac(l)}});
        rep.csv_rows.push_back({std::to_string(i), str(r), str(s), frac(c), frac(l)});
      }
  rep.payload["corrected_vanishes"] = corrected_vanishes;
  rep.payload["rows"] = std::move(rows);
  return rep;
}

void emit(const std::string& command, const std::string& format, Report rep, std::ostream& out) {
  rep.config["format"] = format;
  if (format == "csv") {
    out << "# mahonian " << version() << ' ' << command << '\n';
    out << "# config " << rep.config.dump() << '\n';
    auto line = [&](const Row& row) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
      out << '\n';
    };
    line(rep.csv_header);
    for (const auto& row : rep.csv_rows) line(row);
    return;
  }
  Json top;
  top["tool"] = "mahonian";
  top["version"] = version();
  top["command"] = command;
  top["config"] = std::move(rep.config);
  for (auto& [key, value] : rep.payload.items()) top[key] = value;
  out << top.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact inv/maj statistics on words", "mahonian"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, "Worker threads for sample and converge")->check(CLI::Range(1u, 1024u));
  app.add_option("--state-budget", o.budget, "Largest dynamic-programming table allowed");

  std::map<std::string, std::function<Report(const Options&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, auto handler) {
    handlers[name] = handler;
    return app.add_subcommand(name, help);
  };
  auto counts = [&](CLI::App* sc) {
    return sc->add_option("--counts", o.counts, "Letter multiplicities a_1,...,a_d")->delimiter(',');
  };
  auto multiplicities = [&](CLI::App* sc) {
    return sc->add_option("--multiplicities", o.multiplicities, "Shape m for a = t*m")->delimiter(',');
  };
  auto orders = [&](CLI::App* sc) {
    return sc->add_option("--orders", o.orders, "Moment orders as r:s,r:s,...")->delimiter(',');
  };
  auto ending = [&](CLI::App* sc) {
    return sc->add_option("--ending", o.ending, "Restrict to words ending in this letter")->check(CLI::PositiveNumber);
  };

  auto* dist = add("dist", "Joint distribution of (inv, maj)", cmd_dist);
  counts(dist)->required();
  ending(dist);

  counts(add("qmultinomial", "Distribution of maj (and inv)", cmd_qmultinomial))->required();

  auto* moments = add("moments", "Exact mixed moments of (inv, maj)", cmd_moments);
  counts(moments)->required();
  ending(moments);
  moments->add_option("--max-order", o.max_order, "Largest r+s");
  auto* center = moments->add_flag("--center", o.center, "Central moments");
  moments->add_flag("--factorial", o.factorial, "Factorial moments of the centered pair")->excludes(center);

  auto* rho = add("rho", "Correlation of inv and maj", cmd_rho);
  counts(rho);
  multiplicities(rho);

  auto* gaussian = add("gaussian", "Bivariate normal mixed moments", cmd_gaussian);
  gaussian->add_option("--variance", o.variance, "Common variance V (fraction)");
  gaussian->add_option("--covariance", o.covariance, "Covariance C (fraction)");
  multiplicities(gaussian);
  gaussian->add_option("--two-letter", o.two_letter, "a,b for the two-letter limit")->delimiter(',');
  gaussian->add_option("--max-order", o.max_order, "Largest r+s when --orders is absent");
  orders(gaussian);

  auto* converge = add("converge", "Standardized moments along a = t*m against the normal limit", cmd_converge);
  multiplicities(converge)->required();
  converge->add_option("--scales", o.scales, "Scale factors t")->delimiter(',')->required();
  orders(converge);

  auto* lemma = add("lemma-check", "Exact polynomial fit of factorial moments on a grid", cmd_lemma_check);
  lemma->add_option("--alphabet", o.alphabet, "Alphabet size d (default 2)")->check(CLI::PositiveNumber);
  lemma->add_option("--grid", o.grid, "Coordinates range over 1..grid");
  orders(lemma);

  counts(add("normality", "Kolmogorov distance of maj to the normal law", cmd_normality))->required();

  auto* sample = add("sample", "Monte Carlo moments from uniform random words", cmd_sample);
  counts(sample)->required();
  sample->add_option("--samples", o.samples, "Number of sampled words");
  sample->add_option("--seed", o.seed, "Generator seed");
  sample->add_option("--words", o.words, "Print this many sampled words instead of moments");
  sample->add_flag("--sample-mean", o.sample_mean, "Center on the sample mean instead of the exact mean");
  orders(sample);

  auto* foata = add("foata", "Foata's second fundamental transformation", cmd_foata);
  foata->add_option("--word", o.word, "Letters w(1),...,w(n)")->delimiter(',')->required();
  foata->add_option("--alphabet", o.alphabet, "Alphabet size (default: largest letter)");
  foata->add_flag("--inverse", o.inverse, "Apply the inverse map");

  auto* residual = add("residual", "Residual of the factorial-moment recurrence", cmd_residual);
  counts(residual)->required();
  ending(residual);
  residual->add_option("--max-order", o.max_order, "Largest r+s");

  // the first bare word is the subcommand; global options before it take a value
  for (std::size_t k = 0; k < args.size(); ++k) {
    const auto& arg = args[k];
    if (arg == "--format" || arg == "--threads" || arg == "--state-budget") {
      ++k;
      continue;
    }
    if (arg.empty() || arg[0] == '-') continue;
    if (!handlers.count(arg)) {
      err << "error: unknown subcommand '" << arg << "'\n\n" << app.help();
      return kExitUsage;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "residual" && !residual->count("--max-order")) o.max_order = 3;
  try {
    emit(command, o.format, handlers.at(command)(o), out);
    return kExitOk;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace mahonian::cli
