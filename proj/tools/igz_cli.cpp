// Batch front end: parse variety/channel/family documents, dispatch the
// computation, and emit CSV or JSON results with full parameter provenance.
// Exit codes: 0 success, 2 validation error, 3 budget error, 1 otherwise.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include "igz/algebra.hpp"
#include "igz/cone.hpp"
#include "igz/entropy.hpp"
#include "igz/infogeo_motivic.hpp"
#include "igz/io.hpp"

using namespace igz;

namespace {

struct OutputOpts {
  std::string format = "csv";  // csv | doc
  std::string path;            // empty = stdout
};

void emit(const ResultTable& table, const OutputOpts& out) {
  std::string text = out.format == "doc" ? table.to_doc() : table.to_csv();
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output file '" + out.path + "'");
    f << text;
  }
}

void add_output_flags(CLI::App* cmd, OutputOpts& out) {
  cmd->add_option("--format", out.format, "output format: csv or doc (JSON)")
      ->check(CLI::IsMember({"csv", "doc"}));
  cmd->add_option("-o,--output", out.path, "output path (default stdout)");
}

VarietyDocument load_variety(const std::string& spec_path,
                             const std::string& builtin, uint32_t p, uint32_t e,
                             const std::string& potential) {
  if (!spec_path.empty()) return parse_variety_doc(load_json(spec_path));
  if (builtin.empty())
    throw ValidationError("either --spec <file> or --builtin <name> is required");
  const FieldCtx* ctx = ff_make(p, e);
  VarietyDocument doc{builtin_variety(builtin, ctx), MPoly(ctx, 0)};
  doc.f = MPoly(ctx, doc.X.ncoords());
  if (!potential.empty()) {
    doc.f = MPoly::parse(ctx, doc.X.ncoords(), potential);
    check_potential(doc.X, doc.f);
  }
  return doc;
}

std::string variety_name(const std::string& spec_path, const std::string& builtin) {
  return spec_path.empty() ? builtin : spec_path;
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string vec_str(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << fmt_double(v[i]);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "igz: zeta functions, motivic measures, and information geometry at "
      "desk scale"};
  app.require_subcommand(1);

  // ---- zeta ----------------------------------------------------------------
  struct {
    std::string spec, builtin;
    uint32_t p = 2, e = 1;
    int trunc = 8;
    OutputOpts out;
  } zeta_a;
  {
    auto* c = app.add_subcommand("zeta", "Hasse-Weil zeta series (exact)");
    c->add_option("--spec", zeta_a.spec, "variety document (JSON)");
    c->add_option("--builtin", zeta_a.builtin, "builtin: spec|point|A<k>|P<k>");
    c->add_option("--p", zeta_a.p, "characteristic");
    c->add_option("--e", zeta_a.e, "field extension degree");
    c->add_option("--trunc", zeta_a.trunc, "truncation degree N");
    add_output_flags(c, zeta_a.out);
    c->callback([&] {
      auto doc = load_variety(zeta_a.spec, zeta_a.builtin, zeta_a.p, zeta_a.e, "");
      QSeries z = hasse_weil(doc.X, zeta_a.trunc);
      ResultTable t;
      t.columns = {"p", "e", "variety", "trunc", "degree", "coeff", "coeff_real"};
      for (int n = 0; n <= zeta_a.trunc; ++n)
        t.add_row({std::to_string(doc.X.ctx->p()), std::to_string(doc.X.ctx->e()),
                   variety_name(zeta_a.spec, zeta_a.builtin),
                   std::to_string(zeta_a.trunc), std::to_string(n),
                   rat_str(z[n]), fmt_double(rat_to_double(z[n]))});
      emit(t, zeta_a.out);
    });
  }

  // ---- zeta-chi ------------------------------------------------------------
  struct {
    std::string spec, builtin, potential;
    uint32_t p = 2, e = 1, j = 1;
    int trunc = 6;
    OutputOpts out;
  } zc_a;
  {
    auto* c = app.add_subcommand(
        "zeta-chi", "character-twisted zeta via the dual-route Euler product");
    c->add_option("--spec", zc_a.spec, "variety document (JSON)");
    c->add_option("--builtin", zc_a.builtin, "builtin variety name");
    c->add_option("--p", zc_a.p, "characteristic");
    c->add_option("--e", zc_a.e, "field extension degree");
    c->add_option("--potential", zc_a.potential, "potential f (overrides doc)");
    c->add_option("--char-j", zc_a.j, "character frequency j in Z/p");
    c->add_option("--trunc", zc_a.trunc, "truncation degree N");
    add_output_flags(c, zc_a.out);
    c->callback([&] {
      auto doc =
          load_variety(zc_a.spec, zc_a.builtin, zc_a.p, zc_a.e, zc_a.potential);
      AdditiveCharacter chi(doc.X.ctx, zc_a.j);
      CSeries z = zeta_chi_euler(doc.X, doc.f, chi, zc_a.trunc);
      ResultTable t;
      t.columns = {"p",     "e",      "variety", "char_j",
                   "trunc", "degree", "re",      "im"};
      for (int n = 0; n <= zc_a.trunc; ++n)
        t.add_row({std::to_string(doc.X.ctx->p()), std::to_string(doc.X.ctx->e()),
                   variety_name(zc_a.spec, zc_a.builtin), std::to_string(chi.j),
                   std::to_string(zc_a.trunc), std::to_string(n),
                   fmt_double(z[n].real()), fmt_double(z[n].imag())});
      emit(t, zc_a.out);
    });
  }

  // ---- entropy ---------------------------------------------------------
  struct {
    std::string spec, builtin;
    uint32_t p = 2, e = 1;
    double s = 1.0;
    int trunc = 60;
    OutputOpts out;
  } ent_a;
  {
    auto* c = app.add_subcommand("entropy",
                                 "Shannon entropy of the Hasse-Weil ensemble");
    c->add_option("--spec", ent_a.spec, "variety document (JSON)");
    c->add_option("--builtin", ent_a.builtin, "builtin variety name");
    c->add_option("--p", ent_a.p, "characteristic");
    c->add_option("--e", ent_a.e, "field extension degree");
    c->add_option("--s", ent_a.s, "evaluation point s");
    c->add_option("--trunc", ent_a.trunc, "truncation degree N");
    add_output_flags(c, ent_a.out);
    c->callback([&] {
      auto doc = load_variety(ent_a.spec, ent_a.builtin, ent_a.p, ent_a.e, "");
      double v = shannon_zeta(doc.X, ent_a.s, ent_a.trunc);
      double tail = shannon_zeta_tail(doc.X, ent_a.s, ent_a.trunc);
      ResultTable t;
      t.columns = {"p",     "e",        "variety", "s",
                   "trunc", "quantity", "value",   "tail_bound"};
      t.add_row({std::to_string(doc.X.ctx->p()), std::to_string(doc.X.ctx->e()),
                 variety_name(ent_a.spec, ent_a.builtin), fmt_double(ent_a.s),
                 std::to_string(ent_a.trunc), "shannon_zeta", fmt_double(v),
                 fmt_double(tail)});
      emit(t, ent_a.out);
    });
  }

  // ---- lfun ------------------------------------------------------------
  struct {
    std::string builtin = "spec";
    double s = 2.0;
    uint32_t prime_bound = 1000;
    int trunc = 25;
    OutputOpts out;
  } lf_a;
  {
    auto* c = app.add_subcommand(
        "lfun", "L-function over Z (Euler product of local zetas) and its entropy");
    c->add_option("--builtin", lf_a.builtin, "spec | A<k> | P<k>");
    c->add_option("--s", lf_a.s, "evaluation point s");
    c->add_option("--prime-bound", lf_a.prime_bound, "include primes <= bound");
    c->add_option("--trunc", lf_a.trunc, "local truncation degree");
    add_output_flags(c, lf_a.out);
    c->callback([&] {
      VarietyOverZ XZ = VarietyOverZ::spec_z();
      if (lf_a.builtin != "spec" && lf_a.builtin != "point") {
        int k = std::stoi(lf_a.builtin.substr(1));
        XZ = lf_a.builtin[0] == 'A' ? VarietyOverZ::affine_space(k)
                                    : VarietyOverZ::proj_space(k);
      }
      double l = l_function(XZ, lf_a.s, lf_a.prime_bound, lf_a.trunc);
      double sz = entropy_Z(XZ, lf_a.s, lf_a.prime_bound, lf_a.trunc);
      ResultTable t;
      t.columns = {"builtin", "s", "prime_bound", "trunc", "quantity", "value"};
      auto add = [&](const char* q, double v) {
        t.add_row({lf_a.builtin, fmt_double(lf_a.s),
                   std::to_string(lf_a.prime_bound), std::to_string(lf_a.trunc),
                   q, fmt_double(v)});
      };
      add("l_function", l);
      add("entropy_Z", sz);
      emit(t, lf_a.out);
    });
  }

  // ---- kl --------------------------------------------------------------
  struct {
    std::string spec, builtin, f_str, h_str;
    uint32_t p = 3, e = 1, j = 1;
    int64_t eps = 1;
    double t = 0.1;
    int trunc = 6;
    OutputOpts out;
  } kl_a;
  {
    auto* c = app.add_subcommand(
        "kl", "zeta Kullback-Leibler divergence under a potential deformation");
    c->add_option("--spec", kl_a.spec, "variety document (JSON)");
    c->add_option("--builtin", kl_a.builtin, "builtin variety name");
    c->add_option("--p", kl_a.p, "characteristic");
    c->add_option("--e", kl_a.e, "field extension degree");
    c->add_option("--f", kl_a.f_str, "base potential f");
    c->add_option("--hpot", kl_a.h_str, "deformation direction h");
    c->add_option("--char-j", kl_a.j, "character frequency");
    c->add_option("--eps", kl_a.eps, "deformation size (field element)");
    c->add_option("--t", kl_a.t, "evaluation point t");
    c->add_option("--trunc", kl_a.trunc, "truncation degree N");
    add_output_flags(c, kl_a.out);
    c->callback([&] {
      auto doc = load_variety(kl_a.spec, kl_a.builtin, kl_a.p, kl_a.e, kl_a.f_str);
      MPoly h = kl_a.h_str.empty()
                    ? MPoly(doc.X.ctx, doc.X.ncoords())
                    : MPoly::parse(doc.X.ctx, doc.X.ncoords(), kl_a.h_str);
      AdditiveCharacter chi(doc.X.ctx, kl_a.j);
      Complex v = kl_zeta(doc.X, doc.f, h, chi, FqElem(doc.X.ctx, kl_a.eps),
                          kl_a.t, kl_a.trunc);
      double tail = zeta_eval_tail_bound(doc.X, kl_a.t, kl_a.trunc);
      ResultTable t;
      t.columns = {"p",   "e", "variety", "f",  "h",  "char_j",
                   "eps", "t", "trunc",   "re", "im", "tail_bound"};
      t.add_row({std::to_string(doc.X.ctx->p()), std::to_string(doc.X.ctx->e()),
                 variety_name(kl_a.spec, kl_a.builtin), kl_a.f_str, kl_a.h_str,
                 std::to_string(chi.j), std::to_string(kl_a.eps),
                 fmt_double(kl_a.t), std::to_string(kl_a.trunc),
                 fmt_double(v.real()), fmt_double(v.imag()), fmt_double(tail)});
      emit(t, kl_a.out);
    });
  }

  // ---- red -------------------------------------------------------------
  struct {
    int n = 2;
    uint64_t m = 2;
    OutputOpts out;
  } red_a;
  {
    auto* c = app.add_subcommand("red", "count reduced matrices with det = m");
    c->add_option("--n", red_a.n, "matrix size (<= 4)");
    c->add_option("--m", red_a.m, "determinant target (<= 1e5)");
    add_output_flags(c, red_a.out);
    c->callback([&] {
      ResultTable t;
      t.columns = {"n", "m", "count"};
      t.add_row({std::to_string(red_a.n), std::to_string(red_a.m),
                 std::to_string(red_count(red_a.n, red_a.m))});
      emit(t, red_a.out);
    });
  }

  // ---- fisher ------------------------------------------------------------
  struct {
    std::string family = "bernoulli";
    std::vector<double> gamma = {0.3};
    OutputOpts out;
  } fi_a;
  {
    auto* c = app.add_subcommand(
        "fisher", "Fisher-Rao metric and Amari-Chentsov tensor of a family");
    c->add_option("--family", fi_a.family, "bernoulli | categorical<k> | exptilt");
    c->add_option("--gamma", fi_a.gamma, "parameter vector")->expected(-1);
    add_output_flags(c, fi_a.out);
    c->callback([&] {
      StatFamily fam;
      if (fi_a.family == "bernoulli") fam = StatFamily::bernoulli();
      else if (fi_a.family.rfind("categorical", 0) == 0)
        fam = StatFamily::categorical(std::stoi(fi_a.family.substr(11)));
      else if (fi_a.family == "exptilt")
        fam = StatFamily::exponential_tilt({0.2, 0.3, 0.5},
                                           {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
      else
        throw ValidationError("unknown family '" + fi_a.family + "'");
      if (static_cast<int>(fi_a.gamma.size()) != fam.r)
        throw ValidationError("gamma has wrong length for this family");
      Mat g = fisher_rao(fam, fi_a.gamma);
      Tensor3 A = amari_chentsov(fam, fi_a.gamma);
      ResultTable t;
      t.columns = {"family", "gamma", "object", "i", "j", "k", "value"};
      for (int i = 0; i < fam.r; ++i)
        for (int j = 0; j < fam.r; ++j)
          t.add_row({fi_a.family, vec_str(fi_a.gamma), "g", std::to_string(i),
                     std::to_string(j), "", fmt_double(g[i][j])});
      for (int i = 0; i < fam.r; ++i)
        for (int j = 0; j < fam.r; ++j)
          for (int k = 0; k < fam.r; ++k)
            t.add_row({fi_a.family, vec_str(fi_a.gamma), "A", std::to_string(i),
                       std::to_string(j), std::to_string(k),
                       fmt_double(A[i][j][k])});
      emit(t, fi_a.out);
    });
  }

  // ---- motivic-fisher ------------------------------------------------------
  struct {
    std::string spec, builtin, f_str;
    uint32_t p = 3, e = 1, j = 1, j2 = 1;
    double t = 0.1;
    int trunc = 4;
    OutputOpts out;
  } mf_a;
  {
    auto* c = app.add_subcommand(
        "motivic-fisher", "motivic Fisher-Rao and Amari-Chentsov tensors");
    c->add_option("--spec", mf_a.spec, "variety document (JSON)");
    c->add_option("--builtin", mf_a.builtin, "builtin variety name");
    c->add_option("--p", mf_a.p, "characteristic");
    c->add_option("--e", mf_a.e, "field extension degree");
    c->add_option("--f", mf_a.f_str, "potential f");
    c->add_option("--char-j", mf_a.j, "frequency of chi");
    c->add_option("--char-j2", mf_a.j2, "frequency of chi'");
    c->add_option("--t", mf_a.t, "evaluation point t");
    c->add_option("--trunc", mf_a.trunc, "truncation degree N");
    add_output_flags(c, mf_a.out);
    c->callback([&] {
      auto doc = load_variety(mf_a.spec, mf_a.builtin, mf_a.p, mf_a.e, mf_a.f_str);
      AdditiveCharacter chi(doc.X.ctx, mf_a.j), chi2(doc.X.ctx, mf_a.j2);
      CMatN g = motivic_fisher(doc.X, doc.f, chi, chi2, mf_a.t, mf_a.trunc);
      CTensor3 A = motivic_ac(doc.X, doc.f, chi, chi2, mf_a.t, mf_a.trunc);
      ResultTable t;
      t.columns = {"p",     "variety", "f", "char_j", "char_j2", "t",
                   "trunc", "tensor",  "i", "j",      "k",       "re",
                   "im"};
      auto add = [&](const char* which, int i, int j, int k, Complex v) {
        t.add_row({std::to_string(doc.X.ctx->p()),
                   variety_name(mf_a.spec, mf_a.builtin), mf_a.f_str,
                   std::to_string(chi.j), std::to_string(chi2.j),
                   fmt_double(mf_a.t), std::to_string(mf_a.trunc), which,
                   std::to_string(i), std::to_string(j),
                   k < 0 ? "" : std::to_string(k), fmt_double(v.real()),
                   fmt_double(v.imag())});
      };
      const int n = doc.X.ncoords();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) add("g", i, j, -1, g[i][j]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) add("A", i, j, k, A[i][j][k]);
      emit(t, mf_a.out);
    });
  }

  // ---- cone --------------------------------------------------------------
  struct {
    std::string kind = "orthant";
    int n = 2;
    std::vector<double> x = {1.0, 2.0};
    uint64_t samples = 0;
    uint64_t seed = 1234;
    OutputOpts out;
  } cone_a;
  {
    auto* c = app.add_subcommand("cone",
                                 "cone characteristic function and geometry");
    c->add_option("--kind", cone_a.kind, "orthant | lorentz | psd");
    c->add_option("--n", cone_a.n, "cone parameter");
    c->add_option("--x", cone_a.x, "evaluation point")->expected(-1);
    c->add_option("--mc-samples", cone_a.samples, "Monte-Carlo samples (0 = skip)");
    c->add_option("--seed", cone_a.seed, "Monte-Carlo seed");
    add_output_flags(c, cone_a.out);
    c->callback([&] {
      ConeModel cone = [&] {
        if (cone_a.kind == "orthant") return ConeModel::orthant(cone_a.n);
        if (cone_a.kind == "lorentz") return ConeModel::lorentz(cone_a.n);
        if (cone_a.kind == "psd") return ConeModel::psd(cone_a.n);
        throw ValidationError("unknown cone kind '" + cone_a.kind + "'");
      }();
      ResultTable t;
      t.columns = {"kind", "n", "x", "seed", "object",
                   "i",    "j", "k", "value", "stderr"};
      auto add = [&](const std::string& obj, int i, int j, int k, double v,
                     double se) {
        t.add_row({cone_a.kind, std::to_string(cone_a.n), vec_str(cone_a.x),
                   std::to_string(cone_a.seed), obj,
                   i < 0 ? "" : std::to_string(i), j < 0 ? "" : std::to_string(j),
                   k < 0 ? "" : std::to_string(k), fmt_double(v),
                   se < 0 ? "" : fmt_double(se)});
      };
      add("phi", -1, -1, -1, char_fn(cone, cone_a.x), -1);
      if (cone_a.samples > 0) {
        McEstimate mc = char_fn_mc(cone, cone_a.x, cone_a.samples, cone_a.seed);
        add("phi_mc", -1, -1, -1, mc.value, mc.stderr_);
      }
      Mat g = cone_metric(cone, cone_a.x);
      Tensor3 G = cone_christoffel(cone, cone_a.x);
      for (int i = 0; i < cone.dim(); ++i)
        for (int j = 0; j < cone.dim(); ++j) add("g", i, j, -1, g[i][j], -1);
      for (int i = 0; i < cone.dim(); ++i)
        for (int j = 0; j < cone.dim(); ++j)
          for (int k = 0; k < cone.dim(); ++k)
            add("christoffel", i, j, k, G[i][j][k], -1);
      if (cone.kind() == ConeKind::Orthant)
        add("wdvv_ok", -1, -1, -1, orthant_wdvv(cone_a.x) ? 1.0 : 0.0, -1);
      emit(t, cone_a.out);
    });
  }

  // ---- channel -------------------------------------------------------------
  struct {
    std::string input;
    OutputOpts out;
  } ch_a;
  {
    auto* c = app.add_subcommand(
        "channel", "CP/TP verdicts for a Choi matrix, optionally applied to a state");
    c->add_option("input", ch_a.input, "channel document (JSON)")->required();
    add_output_flags(c, ch_a.out);
    c->callback([&] {
      Json doc = load_json(ch_a.input);
      size_t d = doc.at("d").get<size_t>();
      ChoiMatrix C(d, parse_cmatrix(doc.at("choi")));
      ResultTable t;
      t.columns = {"input", "object", "i", "j", "re", "im"};
      auto add = [&](const std::string& obj, int i, int j, Complex v) {
        t.add_row({ch_a.input, obj, i < 0 ? "" : std::to_string(i),
                   j < 0 ? "" : std::to_string(j), fmt_double(v.real()),
                   fmt_double(v.imag())});
      };
      add("cp_ok", -1, -1, Complex(cp_check(C) ? 1 : 0, 0));
      add("tp_ok", -1, -1, Complex(tp_check(C) ? 1 : 0, 0));
      add("choi_min_eigenvalue", -1, -1, Complex(choi_min_eigenvalue(C), 0));
      if (doc.contains("state")) {
        CMat rho = parse_cmatrix(doc.at("state"));
        CMat out_state = choi_apply(C, rho);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j < d; ++j)
            add("out_state", static_cast<int>(i), static_cast<int>(j),
                out_state(i, j));
      }
      emit(t, ch_a.out);
    });
  }

  // ---- clifford --------------------------------------------------------
  struct {
    int p = 1, q = 1;
    OutputOpts out;
  } cl_a;
  {
    auto* c = app.add_subcommand("clifford", "Clifford algebra diagnostics");
    c->add_option("--p", cl_a.p, "positive signature count");
    c->add_option("--q", cl_a.q, "negative signature count");
    add_output_flags(c, cl_a.out);
    c->callback([&] {
      if (cl_a.p < 0 || cl_a.q < 0 || cl_a.p + cl_a.q > 4)
        throw ValidationError("clifford: need p, q >= 0 and p + q <= 4");
      CliffordAlgebra cl{cl_a.p, cl_a.q};
      ResultTable t;
      t.columns = {"p", "q", "object", "value"};
      auto add = [&](const char* obj, const std::string& v) {
        t.add_row({std::to_string(cl_a.p), std::to_string(cl_a.q), obj, v});
      };
      add("dimension", std::to_string(cl.dim()));
      add("relations_ok", clifford_check(cl) ? "1" : "0");
      add("frobenius_trace_form_ok",
          frobenius_check(cl.to_frobenius()) ? "1" : "0");
      emit(t, cl_a.out);
    });
  }

  // ---- quad ------------------------------------------------------------
  struct {
    std::string input;
    OutputOpts out;
  } qd_a;
  {
    auto* c = app.add_subcommand(
        "quad", "quadratic-algebra black/white products and duals");
    c->add_option("input", qd_a.input,
                  "JSON: {d_a, rel_a: [[int,...]], d_b, rel_b}")
        ->required();
    add_output_flags(c, qd_a.out);
    c->callback([&] {
      Json doc = load_json(qd_a.input);
      auto load_quad = [&](const char* dkey, const char* relkey) {
        int d = doc.at(dkey).get<int>();
        QMat rel;
        for (auto& row : doc.at(relkey)) {
          QVec qrow;
          for (auto& v : row) qrow.push_back(Rat(v.get<int64_t>()));
          rel.push_back(std::move(qrow));
        }
        return QuadraticAlgebra::make(d, std::move(rel));
      };
      auto A = load_quad("d_a", "rel_a");
      auto B = load_quad("d_b", "rel_b");
      ResultTable t;
      t.columns = {"input", "object", "row", "col", "value"};
      auto add_mat = [&](const std::string& obj, const QMat& m) {
        if (m.empty()) t.add_row({qd_a.input, obj, "", "", "empty"});
        for (size_t r = 0; r < m.size(); ++r)
          for (size_t cidx = 0; cidx < m[r].size(); ++cidx)
            t.add_row({qd_a.input, obj, std::to_string(r), std::to_string(cidx),
                       rat_str(m[r][cidx])});
      };
      add_mat("black_rel", quad_black(A, B).rel);
      add_mat("white_rel", quad_white(A, B).rel);
      add_mat("dual_a_rel", quad_dual(A).rel);
      add_mat("dual_b_rel", quad_dual(B).rel);
      t.add_row({qd_a.input, "duality_ok", "", "",
                 quad_duality_check(A, B) ? "1" : "0"});
      emit(t, qd_a.out);
    });
  }

  // ---- cat-check ---------------------------------------------------------
  struct {
    std::string input;
    int trials = 100;
    uint64_t seed = 4242;
    OutputOpts out;
  } cc_a;
  {
    auto* c = app.add_subcommand(
        "cat-check", "classical probability-category checks on a document");
    c->add_option("input", cc_a.input, "JSON: {P: [...], Q: [...], S: [[...]]}")
        ->required();
    c->add_option("--trials", cc_a.trials, "Hom-convexity trials");
    c->add_option("--seed", cc_a.seed, "sampling seed");
    add_output_flags(c, cc_a.out);
    c->callback([&] {
      Json doc = load_json(cc_a.input);
      auto read_dist = [&](const char* key) {
        Vec v;
        for (auto& x : doc.at(key)) v.push_back(x.get<double>());
        std::vector<std::string> labels;
        for (size_t i = 0; i < v.size(); ++i)
          labels.push_back(std::string(key) + std::to_string(i));
        return FinProb(labels, v);
      };
      FinProb P = read_dist("P"), Q = read_dist("Q");
      ResultTable t;
      t.columns = {"input", "check", "trials", "seed", "ok"};
      auto add = [&](const char* check, bool ok) {
        t.add_row({cc_a.input, check, std::to_string(cc_a.trials),
                   std::to_string(cc_a.seed), ok ? "1" : "0"});
      };
      add("hom_convexity", hom_convexity_check(P, Q, cc_a.trials, cc_a.seed));
      if (doc.contains("S")) {
        Mat rows;
        for (auto& r : doc.at("S")) {
          Vec row;
          for (auto& v : r) row.push_back(v.get<double>());
          rows.push_back(std::move(row));
        }
        auto S = StochasticMatrix::from_rows(std::move(rows));
        add("zero_factorization", zero_factorization_check(S));
      }
      FinProb prod = monoidal_product(P, Q);
      double sum = 0;
      for (double v : prod.P) sum += v;
      add("product_mass_one", std::abs(sum - 1.0) <= 1e-12);
      emit(t, cc_a.out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const BudgetError& err) {
    std::cerr << "budget error: " << err.what() << "\n";
    return 3;
  } catch (const ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
