// defo: command-line front end over the deformation-theory library.

#include <future>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "defo/deligne2.hpp"
#include "defo/fixtures.hpp"
#include "defo/io.hpp"

using namespace defo;
using io::Json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kPrecondition = 3, kObstruction = 4, kInconclusive = 5 };

struct Globals {
  int order = 3;
  std::optional<int> params;
  bool json = false;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Result of one command: a JSON payload and the matching human-readable lines.
struct Output {
  explicit Output(std::string c) : command(std::move(c)) {}

  std::string command;
  int code = kOk;
  Json result = Json::object();
  std::vector<std::string> lines;

  void line(const std::string& s) { lines.push_back(s); }
  void print(bool json) const {
    if (json) {
      std::cout << io::dump(Json{{"command", command}, {"exit_code", code}, {"result", result}});
    } else {
      for (const auto& l : lines) std::cout << l << "\n";
    }
  }
};

std::string show(const NilpotentDGLA& L, const Element& e) { return L.to_string(e); }

std::string show_class(const NilpotentDGLA& L, const ObstructionClass& c) {
  return std::string(c.level == ObstructionLevel::O2 ? "o2" : "o1") + " at order " + std::to_string(c.order) + ": [" +
         show(L, c.representative) + "]";
}

std::string trimmed(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string show_report(const Report& r) {
  std::string s = std::to_string(r.checks.size() - r.failures()) + "/" + std::to_string(r.checks.size()) + " checks pass";
  if (const auto* f = r.first_failure()) s += "; first failure: " + f->name + " at " + f->sample + (f->detail.empty() ? "" : " (" + f->detail + ")");
  return s;
}

struct Loader {
  const Globals& g;

  DGLAPtr algebra(const std::string& path) const { return DGLieAlgebra::make(io::dgla_from_json(io::read_file(path))); }

  /// Context from --params, else the parameter count of the first element file with terms.
  ContextPtr context(const std::vector<std::string>& element_files, int order) const {
    int k = g.params.value_or(0);
    if (!g.params)
      for (const auto& f : element_files)
        if (auto p = io::element_params(io::read_file(f))) {
          k = *p;
          break;
        }
    if (k <= 0) k = 1;
    if (order < 0) throw PreconditionError("truncation order must be non-negative");
    return TruncationContext::make(k, order);
  }

  Element element(const NilpotentDGLA& L, const std::string& path, int degree) const {
    Element e = io::element_from_json(L, io::read_file(path));
    if (e.degree != degree) throw PreconditionError("'" + path + "' has degree " + std::to_string(e.degree) + ", expected " + std::to_string(degree));
    return e;
  }
};

struct Sampler {
  std::mt19937_64 gen;
  Element element(const NilpotentDGLA& L, int degree) {
    Element e = L.zero(degree);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::bernoulli_distribution keep(0.5);
    for (auto& c : e.coeffs)
      if (keep(gen)) c = coef(gen);
    return e;
  }
  GaugeElement gauge(const NilpotentDGLA& L) { return {element(L, 0)}; }
};

// ---- validate ----

Output cmd_validate(const Globals& G, const std::vector<std::string>& paths) {
  Output out{"validate"};
  Json files = Json::array();
  bool parse_error = false, invalid = false;
  for (const auto& p : paths) {
    Json entry{{"path", p}};
    try {
      Json j = io::read_file(p);
      std::string type = j.contains("type") ? j["type"].get<std::string>() : "dgla";
      entry["type"] = type;
      if (type == "dgla") {
        auto rep = validate_dgla(io::dgla_from_json(j));
        entry["report"] = io::to_json(rep);
        invalid |= !rep.ok();
        out.line(p + ": " + (rep.ok() ? "valid DG Lie algebra" : "INVALID: " + trimmed(rep.summary())));
      } else if (type == "morphism") {
        auto m = io::morphism_data_from_json(j, std::filesystem::path(p).parent_path());
        auto rep = DGLAMorphism::check(m.source, m.target, m.components);
        entry["report"] = io::to_json(rep);
        invalid |= !rep.ok();
        out.line(p + ": " + (rep.ok() ? "valid DG Lie morphism" : "INVALID: " + trimmed(rep.summary())));
      } else if (type == "linf") {
        auto l = io::linf_from_json(j, std::filesystem::path(p).parent_path());
        auto rep = validate_linf(l.data, l.horizon);
        entry["report"] = io::to_json(rep);
        invalid |= !rep.ok();
        out.line(p + ": " + (rep.ok() ? "valid L-infinity morphism to weight " + std::to_string(l.horizon) : "INVALID: " + show_report(rep)));
      } else {
        throw ParseError("validate handles dgla, morphism and linf documents, not '" + type + "'");
      }
    } catch (const ParseError& e) {
      parse_error = true;
      entry["error"] = e.what();
      out.line(p + ": PARSE ERROR: " + e.what());
    } catch (const PreconditionError& e) {
      invalid = true;
      entry["error"] = e.what();
      out.line(p + ": INVALID: " + e.what());
    }
    files.push_back(entry);
  }
  (void)G;
  out.result["files"] = files;
  out.code = parse_error ? kParse : invalid ? kInvalid : kOk;
  return out;
}

// ---- mc ----

Output cmd_mc_curvature(const Globals& G, const std::string& alg, const std::string& mc) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc}, G.order));
  Element w = ld.element(L, mc, 1);
  Element c = curvature(L, w);
  Output out{"mc curvature"};
  out.result = Json{{"curvature", io::to_json(L, c)}, {"is_mc", c.is_zero()}};
  out.line("curvature: " + show(L, c));
  out.line(c.is_zero() ? "Maurer-Cartan" : "not Maurer-Cartan");
  out.code = c.is_zero() ? kOk : kInvalid;
  return out;
}

Output cmd_mc_lift(const Globals& G, const std::string& alg, const std::string& mc) {
  Loader ld{G};
  if (G.order < 1) throw PreconditionError("mc lift needs --order >= 1");
  auto ctx = ld.context({mc}, G.order);
  NilpotentDGLA Lj(ld.algebra(alg), ctx);
  NilpotentDGLA lower = Lj.truncated(G.order - 1);
  Element w = ld.element(lower, mc, 1);
  Output out{"mc lift"};
  auto lift = lift_mc_one_order(Lj, lower, w);
  if (!lift) {
    auto cls = o2_of(Lj, lower, w);
    out.code = kObstruction;
    out.result = Json{{"obstruction", io::to_json(Lj, cls)}};
    out.line("obstructed: " + show_class(Lj, cls));
    return out;
  }
  check(is_mc(Lj, *lift), "lift is not Maurer-Cartan");
  out.result = Json{{"lift", io::to_json(Lj, *lift)}};
  out.line("lift: " + show(Lj, *lift));
  return out;
}

Output connect_output(const std::string& name, const NilpotentDGLA& L, const Element& w, const Element& w2) {
  Output out{name};
  auto c = connect_greedy(L, w, w2);
  switch (c.kind) {
    case Connectivity::Kind::Connected:
      check(af_action(L, *c.witness, w) == w2, "connecting gauge does not connect");
      out.result = Json{{"connected", true}, {"gauge", io::to_json(L, c.witness->log)}};
      out.line("connected by exp(" + show(L, c.witness->log) + ")");
      break;
    case Connectivity::Kind::Obstructed:
      out.code = kObstruction;
      out.result = Json{{"connected", false}, {"order", c.order}, {"obstruction", io::to_json(L.truncated(c.order), *c.obstruction)}};
      out.line("not gauge equivalent: " + show_class(L.truncated(c.order), *c.obstruction));
      break;
    case Connectivity::Kind::Inconclusive:
      out.code = kInconclusive;
      out.result = Json{{"connected", nullptr}, {"order", c.order}};
      out.line("inconclusive at order " + std::to_string(c.order));
      break;
  }
  return out;
}

Output cmd_mc_connect(const Globals& G, const std::string& alg, const std::string& mc, const std::string& to) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc, to}, G.order));
  return connect_output("mc connect", L, ld.element(L, mc, 1), ld.element(L, to, 1));
}

Output cmd_mc_stabilizer(const Globals& G, const std::string& alg, const std::string& mc, const std::string& gauge) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc}, G.order));
  Element w = ld.element(L, mc, 1);
  Output out{"mc stabilizer"};
  auto reps = stabilizer_exp(L, w);
  Json basis = Json::array();
  out.line("reduced automorphisms: exp of " + std::to_string(reps.size()) + " twisted degree-0 classes");
  for (const auto& g : reps) {
    basis.push_back(io::to_json(L, g.log));
    out.line("  exp(" + show(L, g.log) + ")");
  }
  out.result["h0_representatives"] = basis;
  if (!gauge.empty()) {
    GaugeElement g{ld.element(L, gauge, 0)};
    bool fixes = af_action(L, g, w) == w;
    bool closed = twisted_d(L, w, g.log).is_zero();
    check(fixes == closed, "stabiliser criterion disagrees with the action");
    out.result["stabilizes"] = fixes;
    out.line(std::string("gauge ") + (fixes ? "stabilizes" : "does not stabilize") + " the element (d_w log g " + (closed ? "= 0)" : "!= 0)"));
    out.code = fixes ? kOk : kInvalid;
  }
  return out;
}

// ---- gauge ----

Output cmd_gauge_act(const Globals& G, const std::string& alg, const std::string& gauge, const std::string& mc) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc, gauge}, G.order));
  Element w = ld.element(L, mc, 1);
  GaugeElement g{ld.element(L, gauge, 0)};
  auto r = af_action(L, g, MCElement::make(L, w));
  check(is_mc(L, r.value()), "gauge action left the MC locus");
  Output out{"gauge act"};
  out.result = Json{{"mc", io::to_json(L, r.value())}};
  out.line(show(L, r.value()));
  return out;
}

Output cmd_gauge_compose(const Globals& G, const std::string& alg, const std::string& g1, const std::string& g2) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({g1, g2}, G.order));
  GaugeElement a{ld.element(L, g1, 0)}, b{ld.element(L, g2, 0)};
  GaugeElement c = gauge_compose(L, a, b);
  Output out{"gauge compose"};
  out.result = Json{{"gauge", io::to_json(L, c.log)}};
  out.line("exp(" + show(L, c.log) + ")");
  return out;
}

Output cmd_gauge_reduced_equal(const Globals& G, const std::string& alg, const std::string& mc, const std::string& g1, const std::string& g2) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc, g1, g2}, G.order));
  Element w = ld.element(L, mc, 1);
  bool eq = reduced_equal(L, GaugeElement{ld.element(L, g1, 0)}, GaugeElement{ld.element(L, g2, 0)}, w);
  Output out{"gauge reduced-equal"};
  out.result = Json{{"equal", eq}};
  out.line(eq ? "equal in the reduced groupoid" : "different in the reduced groupoid");
  out.code = eq ? kOk : kInvalid;
  return out;
}

Output cmd_gauge_integrate(const Globals& G, const std::string& alg, const std::string& path) {
  Loader ld{G};
  Json j = io::read_file(path);
  int k = G.params.value_or(0);
  if (!G.params)
    for (const auto& part : {"one_part", "form_part"})
      if (j.contains(part))
        for (const auto& c : j[part])
          if (auto p = io::element_params(c); p && k == 0) k = *p;
  NilpotentDGLA L(ld.algebra(alg), TruncationContext::make(k > 0 ? k : 1, G.order));
  MCPath p = io::path_from_json(L, j);
  GaugeElement g = integrate_mc_path(L, p);
  check(af_action(L, g, path_at(p, 0)) == path_at(p, 1), "integrated gauge does not connect the endpoints");
  Output out{"gauge integrate-path"};
  out.result = Json{{"gauge", io::to_json(L, g.log)}};
  out.line("exp(" + show(L, g.log) + ")");
  return out;
}

// ---- transfer ----

Output cmd_transfer(const Globals& G, const std::string& morphism, const std::string& mc) {
  Loader ld{G};
  auto f = io::morphism_from_json(io::read_file(morphism), std::filesystem::path(morphism).parent_path());
  auto ctx = ld.context({mc}, G.order);
  NilpotentDGLA Lg(f->source(), ctx), Lh(f->target(), ctx);
  Element chi = ld.element(Lh, mc, 1);
  auto r = transfer_mc(*f, Lg, Lh, chi);
  check(is_mc(Lg, r.omega) && af_action(Lh, r.h, apply_morphism(*f, Lg, Lh, r.omega)) == chi, "transfer witness fails");
  Output out{"transfer"};
  out.result = Json{{"omega", io::to_json(Lg, r.omega)}, {"gauge", io::to_json(Lh, r.h.log)}};
  out.line("omega: " + show(Lg, r.omega));
  out.line("h: exp(" + show(Lh, r.h.log) + ")");
  out.line("Af(h)(phi(omega)) = chi verified");
  return out;
}

// ---- groupoid ----

Output cmd_groupoid_pi(const Globals& G, int level, const std::string& alg, const std::string& mc, const std::string& to) {
  Loader ld{G};
  std::vector<std::string> files{mc};
  if (!to.empty()) files.push_back(to);
  NilpotentDGLA L(ld.algebra(alg), ld.context(files, G.order));
  Element w = ld.element(L, mc, 1);
  if (!is_mc(L, w)) throw PreconditionError("'" + mc + "' is not Maurer-Cartan");
  if (level == 0) {
    if (to.empty()) throw PreconditionError("groupoid pi --level 0 needs --to");
    auto out = connect_output("groupoid pi", L, w, ld.element(L, to, 1));
    out.result["level"] = 0;
    return out;
  }
  Output out{"groupoid pi"};
  if (level == 1) {
    auto reps = stabilizer_exp(L, w);
    Json basis = Json::array();
    for (const auto& g : reps) basis.push_back(io::to_json(L, g.log));
    out.result = Json{{"level", 1}, {"dimension", reps.size()}, {"generators", basis}};
    out.line("pi_1: exp of a " + std::to_string(reps.size()) + "-dimensional twisted H^0");
    for (const auto& g : reps) out.line("  exp(" + show(L, g.log) + ")");
    return out;
  }
  if (level != 2) throw PreconditionError("--level must be 0, 1 or 2");
  auto data = DeligneCrossedData::make(L);
  auto p = data->pi2(w);
  Json basis = Json::array();
  for (const auto& b : p.basis) basis.push_back(io::to_json(L, b.alpha));
  out.result = Json{{"level", 2}, {"dimension", p.dimension}, {"h_minus1", p.h_minus1}, {"basis", basis}, {"report", io::to_json(p.checks)}};
  out.line("pi_2: dimension " + std::to_string(p.dimension) + " (twisted H^-1: " + std::to_string(p.h_minus1) + ")");
  for (const auto& b : p.basis) out.line("  " + show(L, b.alpha));
  out.line(show_report(p.checks));
  out.code = p.checks.ok() ? kOk : kInvalid;
  return out;
}

/// One crossed-check sample; each job builds its own crossed data.
Report crossed_sample(const NilpotentDGLA& L, const Element& w, std::uint64_t seed, int index) {
  Sampler s{std::mt19937_64(seed + 7919 * static_cast<std::uint64_t>(index))};
  auto data = DeligneCrossedData::make(L);
  auto c = data->crossed();
  DelMor f1{w, s.gauge(L)};
  DelMor f2{data->target(f1), s.gauge(L)};
  std::vector<DelCell> cx{data->cell(w, s.element(L, -1)), data->n_identity(w)};
  std::vector<DelCell> cy{data->cell(f2.source, s.element(L, -1)), data->n_identity(f2.source)};
  std::vector<DelMor> mors{f1, f2, c.identity(w), c.inverse(f1)};
  std::vector<DelCell> cells = cx;
  cells.insert(cells.end(), cy.begin(), cy.end());
  Report r = check_crossed_axioms(c, mors, cells);
  r.append(data->check_commuting_square(mors, cells));
  DeligneTwoGroupoid T(c);
  r.append(check_two_groupoid(T, f1, f2, cx, cy));
  r.append(check_reconstruction(T, mors, cells));
  for (auto& chk : r.checks) chk.sample = "sample " + std::to_string(index) + ": " + chk.sample;
  return r;
}

Output cmd_groupoid_crossed(const Globals& G, const std::string& alg, const std::string& mc, int samples) {
  Loader ld{G};
  NilpotentDGLA L(ld.algebra(alg), ld.context({mc}, G.order));
  Element w = ld.element(L, mc, 1);
  if (!is_mc(L, w)) throw PreconditionError("'" + mc + "' is not Maurer-Cartan");
  Report all;
  const int jobs = std::max(1, G.jobs);
  for (int start = 0; start < samples; start += jobs) {
    std::vector<std::future<Report>> batch;
    for (int i = start; i < std::min(samples, start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, crossed_sample, std::cref(L), std::cref(w), G.seed, i));
    for (auto& f : batch) all.append(f.get());
  }
  Output out{"groupoid crossed-check"};
  out.result = io::to_json(all);
  out.line(show_report(all));
  out.code = all.ok() ? kOk : kInvalid;
  return out;
}

Output cmd_groupoid_weak(const Globals& G, const std::string& morphism, const std::vector<std::string>& mcs, int samples) {
  Loader ld{G};
  auto f = io::morphism_from_json(io::read_file(morphism), std::filesystem::path(morphism).parent_path());
  auto ctx = ld.context(mcs, G.order);
  NilpotentDGLA Lg(f->source(), ctx), Lh(f->target(), ctx);
  std::vector<Element> ws;
  for (const auto& m : mcs) ws.push_back(ld.element(Lg, m, 1));
  if (ws.empty()) ws.push_back(Lg.zero(1));
  Sampler s{std::mt19937_64(G.seed)};
  std::size_t base = ws.size();
  for (int i = 0; i < samples; ++i) ws.push_back(af_action(Lg, s.gauge(Lg), ws[i % base]));
  auto rep = weak_equiv_evidence(*f, Lg, Lh, ws);
  Output out{"groupoid weak-equiv"};
  out.result = io::to_json(rep);
  out.line(show_report(rep));
  out.code = rep.ok() ? kOk : kInvalid;
  return out;
}

// ---- linf ----

LInfPtr load_linf(const std::string& path) {
  auto l = io::linf_from_json(io::read_file(path), std::filesystem::path(path).parent_path());
  return LInfMorphism::make(std::move(l.data), l.horizon);
}

Output cmd_linf_validate(const Globals& G, const std::string& path) {
  auto l = io::linf_from_json(io::read_file(path), std::filesystem::path(path).parent_path());
  auto rep = validate_linf(l.data, l.horizon);
  (void)G;
  Output out{"linf validate"};
  out.result = io::to_json(rep);
  out.line(show_report(rep));
  out.code = rep.ok() ? kOk : kInvalid;
  return out;
}

Output cmd_linf_push(const Globals& G, const std::string& path, const std::string& mc) {
  Loader ld{G};
  auto f = load_linf(path);
  auto ctx = ld.context({mc}, G.order);
  NilpotentDGLA Lg(f->source(), ctx), Lh(f->target(), ctx);
  Element p = mc_pushforward(*f, Lg, Lh, ld.element(Lg, mc, 1));
  check(is_mc(Lh, p), "pushforward is not Maurer-Cartan");
  Output out{"linf push"};
  out.result = Json{{"mc", io::to_json(Lh, p)}};
  out.line(show(Lh, p));
  return out;
}

Output cmd_linf_respect(const Globals& G, const std::string& path, const std::string& mc, const std::string& gauge) {
  Loader ld{G};
  auto f = load_linf(path);
  auto ctx = ld.context({mc, gauge}, G.order);
  NilpotentDGLA Lg(f->source(), ctx), Lh(f->target(), ctx);
  Element w = ld.element(Lg, mc, 1);
  GaugeElement g{ld.element(Lg, gauge, 0)};
  auto r = gauge_respect(*f, Lg, Lh, w, g);
  check(af_action(Lh, r.h, mc_pushforward(*f, Lg, Lh, w)) == mc_pushforward(*f, Lg, Lh, af_action(Lg, g, w)), "gauge_respect witness fails");
  Output out{"linf respect"};
  out.result = Json{{"gauge", io::to_json(Lh, r.h.log)}, {"path", io::to_json(Lh, r.pushed_path)}};
  out.line("h: exp(" + show(Lh, r.h.log) + ")");
  out.line("Af(h)(push(w)) = push(Af(g)(w)) verified");
  return out;
}

Output cmd_linf_compose(const Globals& G, const std::string& first, const std::string& second) {
  auto f = load_linf(first), g = load_linf(second);
  int W = std::min(f->horizon(), g->horizon());
  auto c = compose_linf(*f, *g, W);
  (void)G;
  Output out{"linf compose"};
  out.result = io::to_json(c->data(), c->horizon());
  out.line(io::dump(out.result));
  return out;
}

// ---- examples ----

Output cmd_examples_list() {
  Output out{"examples list"};
  Json names = Json::array();
  for (const auto& f : fixtures::all()) {
    names.push_back(Json{{"name", f.name}, {"description", f.description}});
    out.line(f.name + "  " + f.description);
  }
  out.result["examples"] = names;
  return out;
}

int cmd_examples_emit(const std::string& name, const std::string& file) {
  std::string text = io::dump(fixtures::find(name).emit());
  if (file.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream o(file, std::ios::binary);
  if (!o) throw ParseError("cannot write '" + file + "'");
  o << text;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact deformation theory over truncated parameter algebras"};
  app.require_subcommand(1);
  Globals G;
  app.add_option("--order", G.order, "truncation order N (default 3)");
  app.add_option("--params", G.params, "number of parameters k (default: from the element files)");
  app.add_flag("--json", G.json, "machine-readable JSON output");
  app.add_option("--seed", G.seed, "seed for sampled checks");
  app.add_option("--jobs", G.jobs, "parallel jobs for independent sample checks");
  app.fallthrough();

  std::function<Output()> run;
  std::function<int()> raw;

  std::vector<std::string> paths;
  auto* validate = app.add_subcommand("validate", "validate DG Lie algebra, morphism and L-infinity files");
  validate->add_option("paths", paths, "files")->required();
  validate->callback([&] { run = [&] { return cmd_validate(G, paths); }; });

  std::string alg, mc, to, gauge, gauge2, path, morphism, linf, linf2, out_file, name;
  int level = 0, samples = 3;
  std::vector<std::string> mcs;

  auto* mcc = app.add_subcommand("mc", "Maurer-Cartan elements");
  mcc->require_subcommand(1);
  auto* curv = mcc->add_subcommand("curvature", "curvature of an element");
  curv->add_option("--algebra", alg)->required();
  curv->add_option("--mc", mc)->required();
  curv->callback([&] { run = [&] { return cmd_mc_curvature(G, alg, mc); }; });
  auto* lift = mcc->add_subcommand("lift", "lift an MC element from order N-1 to order N");
  lift->add_option("--algebra", alg)->required();
  lift->add_option("--mc", mc)->required();
  lift->callback([&] { run = [&] { return cmd_mc_lift(G, alg, mc); }; });
  auto* conn = mcc->add_subcommand("connect", "decide gauge equivalence with a witness or an obstruction");
  conn->add_option("--algebra", alg)->required();
  conn->add_option("--mc", mc)->required();
  conn->add_option("--to", to)->required();
  conn->callback([&] { run = [&] { return cmd_mc_connect(G, alg, mc, to); }; });
  auto* stab = mcc->add_subcommand("stabilizer", "reduced automorphisms; with --gauge, test the stabiliser criterion");
  stab->add_option("--algebra", alg)->required();
  stab->add_option("--mc", mc)->required();
  stab->add_option("--gauge", gauge);
  stab->callback([&] { run = [&] { return cmd_mc_stabilizer(G, alg, mc, gauge); }; });

  auto* gc = app.add_subcommand("gauge", "gauge group");
  gc->require_subcommand(1);
  auto* act = gc->add_subcommand("act", "Af(g)(w)");
  act->add_option("--algebra", alg)->required();
  act->add_option("--gauge", gauge)->required();
  act->add_option("--mc", mc)->required();
  act->callback([&] { run = [&] { return cmd_gauge_act(G, alg, gauge, mc); }; });
  auto* comp = gc->add_subcommand("compose", "exp(g) exp(g2)");
  comp->add_option("--algebra", alg)->required();
  comp->add_option("--gauge", gauge)->required();
  comp->add_option("--gauge2", gauge2)->required();
  comp->callback([&] { run = [&] { return cmd_gauge_compose(G, alg, gauge, gauge2); }; });
  auto* req = gc->add_subcommand("reduced-equal", "equality of two gauges in the reduced groupoid at w");
  req->add_option("--algebra", alg)->required();
  req->add_option("--mc", mc)->required();
  req->add_option("--gauge", gauge)->required();
  req->add_option("--gauge2", gauge2)->required();
  req->callback([&] { run = [&] { return cmd_gauge_reduced_equal(G, alg, mc, gauge, gauge2); }; });
  auto* integ = gc->add_subcommand("integrate-path", "gauge element connecting the ends of an MC path");
  integ->add_option("--algebra", alg)->required();
  integ->add_option("--path", path)->required();
  integ->callback([&] { run = [&] { return cmd_gauge_integrate(G, alg, path); }; });

  auto* tr = app.add_subcommand("transfer", "pull an MC element back along a quasi-isomorphism");
  tr->add_option("--morphism", morphism)->required();
  tr->add_option("--mc", mc)->required();
  tr->callback([&] { run = [&] { return cmd_transfer(G, morphism, mc); }; });

  auto* gr = app.add_subcommand("groupoid", "Deligne groupoids");
  gr->require_subcommand(1);
  auto* pi = gr->add_subcommand("pi", "homotopy groups at an MC element");
  pi->add_option("--level", level)->required()->check(CLI::Range(0, 2));
  pi->add_option("--algebra", alg)->required();
  pi->add_option("--mc", mc)->required();
  pi->add_option("--to", to, "second MC element for --level 0");
  pi->callback([&] { run = [&] { return cmd_groupoid_pi(G, level, alg, mc, to); }; });
  auto* cc = gr->add_subcommand("crossed-check", "crossed-groupoid axioms and 2-groupoid laws on samples");
  cc->add_option("--algebra", alg)->required();
  cc->add_option("--mc", mc)->required();
  cc->add_option("--samples", samples);
  cc->callback([&] { run = [&] { return cmd_groupoid_crossed(G, alg, mc, samples); }; });
  auto* we = gr->add_subcommand("weak-equiv", "weak-equivalence evidence for a quasi-isomorphism");
  we->add_option("--morphism", morphism)->required();
  we->add_option("--mc", mcs);
  we->add_option("--samples", samples);
  we->callback([&] { run = [&] { return cmd_groupoid_weak(G, morphism, mcs, samples); }; });

  auto* lc = app.add_subcommand("linf", "L-infinity morphisms");
  lc->require_subcommand(1);
  auto* lv = lc->add_subcommand("validate", "check the L-infinity relations up to the file's horizon");
  lv->add_option("--linf", linf)->required();
  lv->callback([&] { run = [&] { return cmd_linf_validate(G, linf); }; });
  auto* lp = lc->add_subcommand("push", "MC pushforward");
  lp->add_option("--linf", linf)->required();
  lp->add_option("--mc", mc)->required();
  lp->callback([&] { run = [&] { return cmd_linf_push(G, linf, mc); }; });
  auto* lr = lc->add_subcommand("respect", "gauge element relating the pushforwards of w and Af(g)(w)");
  lr->add_option("--linf", linf)->required();
  lr->add_option("--mc", mc)->required();
  lr->add_option("--gauge", gauge)->required();
  lr->callback([&] { run = [&] { return cmd_linf_respect(G, linf, mc, gauge); }; });
  auto* lco = lc->add_subcommand("compose", "second o first");
  lco->add_option("--linf", linf, "first")->required();
  lco->add_option("--linf2", linf2, "second")->required();
  lco->callback([&] { run = [&] { return cmd_linf_compose(G, linf, linf2); }; });

  auto* ex = app.add_subcommand("examples", "bundled fixtures");
  ex->require_subcommand(1);
  ex->add_subcommand("list", "list fixture names")->callback([&] { run = [&] { return cmd_examples_list(); }; });
  auto* emit = ex->add_subcommand("emit", "print or write a fixture");
  emit->add_option("name", name)->required();
  emit->add_option("-o,--output", out_file);
  emit->callback([&] { raw = [&] { return cmd_examples_emit(name, out_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (raw) return raw();
    Output out = run();
    out.print(G.json);
    return out.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InternalError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kInvalid;
  }
}
