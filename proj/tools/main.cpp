// Command-line front end: sgb, m3h, solve, bench, oracle-check.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "sparsegb/f5.hpp"
#include "sparsegb/fglm.hpp"
#include "sparsegb/io.hpp"
#include "sparsegb/multihom.hpp"
#include "sparsegb/oracle.hpp"

using namespace sgb;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string order = "grevlex";
  std::string degree_order = "totlex";
  std::string output_dir = ".";
  std::string witness;  // comma list, empty = auto
  std::string degree;   // comma list for m3h
  std::uint64_t seed = 1;
  std::uint64_t field_p = 0;  // override
  int degree_cap = 64;        // semigroup level cap
  int max_degree = 20;        // auto-witness hard cap
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

BaseOrder base_order_of(const std::string& name) {
  if (name == "grevlex") return BaseOrder::grevlex();
  if (name == "lex") return BaseOrder::lex();
  throw io::ParseError(io::Errc::BadSchema, "unknown order '" + name + "' (grevlex|lex)");
}

BaseOrderKind xorder_kind_of(const std::string& name) {
  if (name == "grevlex") return BaseOrderKind::Grevlex;
  if (name == "lex") return BaseOrderKind::Lex;
  throw io::ParseError(io::Errc::BadSchema, "unknown order '" + name + "' (grevlex|lex)");
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  out << text;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  write_text(dir, name, j.dump(2) + "\n");
}

long long binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void print_stats_header() {
  std::cout << "step degree rows cols rank zero_rows\n";
}
void print_stats_row(const SgbDegreeStats& st) {
  std::cout << st.step << ' ' << st.degree << ' ' << st.rows << ' ' << st.cols << ' ' << st.rank
            << ' ' << st.zero_rows << '\n';
}

json stats_to_json(const std::vector<SgbDegreeStats>& stats) {
  json a = json::array();
  for (const auto& st : stats)
    a.push_back({{"step", st.step},
                 {"degree", st.degree},
                 {"rows", st.rows},
                 {"cols", st.cols},
                 {"rank", st.rank},
                 {"zero_rows", st.zero_rows},
                 {"criterion_rows", st.criterion_rows},
                 {"new_rows", st.new_rows}});
  return a;
}

// ---------------------------------------------------------------- sgb ----

template <FieldType F>
int cmd_sgb(const F& field, const io::Document& doc, const Options& opt) {
  if (doc.model != io::Document::Model::Sparse)
    throw io::ParseError(io::Errc::BadSchema, "sgb needs a sparse-model input");
  SemigroupContext ctx = io::build_context(doc.sparse, opt.degree_cap);
  GradedSparseOrder ord(ctx, base_order_of(opt.order));
  auto polys = io::to_sparse_polys(field, ctx, ord, doc.sparse);

  SgbOptions so;
  so.witness = parse_int_list(opt.witness);
  so.degree_cap = opt.max_degree;
  auto res = sgb_compute(field, ord, polys, so);

  print_stats_header();
  for (const auto& st : res.stats) print_stats_row(st);

  json j;
  j["model"] = "sparse";
  j["order"] = opt.order;
  j["degree_order"] = opt.degree_order;
  j["seed"] = opt.seed;
  j["witness"] = {{"mode", res.auto_mode ? "auto" : "explicit"},
                  {"degrees", res.witness_used},
                  {"degree_capped", res.degree_capped}};
  json basis = json::array();
  for (const auto& g : res.basis) basis.push_back(io::sparse_poly_to_json(field, g));
  j["basis"] = basis;
  j["stats"] = stats_to_json(res.stats);
  write_json(opt.output_dir, "sgb.json", j);
  std::cout << "basis size " << res.basis.size() << "; wrote sgb.json\n";
  return 0;
}

// ---------------------------------------------------------------- m3h ----

template <FieldType F>
int cmd_m3h(const F& field, const io::Document& doc, const Options& opt) {
  if (doc.model != io::Document::Model::Multihom)
    throw io::ParseError(io::Errc::BadSchema, "m3h needs a multihomogeneous-model input");
  MultihomRing ring(doc.multihom.blocks);
  XOrder ord(ring, xorder_kind_of(opt.order));
  auto sys = io::to_multihom_polys(field, ring, ord, doc.multihom);
  if (sys.empty()) throw io::ParseError(io::Errc::BadSchema, "empty system");

  std::vector<Int> d;
  for (int v : parse_int_list(opt.degree)) d.push_back(v);
  if (static_cast<int>(d.size()) != ring.r())
    throw io::ParseError(io::Errc::BadSchema, "--degree needs " + std::to_string(ring.r()) +
                                                  " comma-separated components");

  M3hEngine<F> eng(field, ring, ord, sys);
  const auto& M = eng.matrix(static_cast<int>(sys.size()), d);
  const auto& R = eng.reduced(static_cast<int>(sys.size()), d);

  auto mono_json = [&](const Point& m) { return io::xmono_to_json(ring, m); };
  json j;
  j["model"] = "multihomogeneous";
  j["order"] = opt.order;
  j["degree"] = io::point_to_json(d);
  j["matrix"] = io::matrix_to_json(field, M, mono_json);
  j["rank"] = R.rank;
  j["zero_rows"] = R.zero_rows;
  json stats = json::array();
  for (const auto& st : eng.stats())
    stats.push_back({{"k", st.k},
                     {"degree", io::point_to_json(st.degree)},
                     {"rows", st.rows},
                     {"cols", st.cols},
                     {"rank", st.rank},
                     {"zero_rows", st.zero_rows}});
  j["stats"] = stats;
  write_json(opt.output_dir, "m3h.json", j);

  std::cout << "k degree rows cols rank zero_rows\n";
  for (const auto& st : eng.stats()) {
    std::cout << st.k << " (";
    for (std::size_t i = 0; i < st.degree.size(); ++i)
      std::cout << (i ? "," : "") << st.degree[i];
    std::cout << ") " << st.rows << ' ' << st.cols << ' ' << st.rank << ' ' << st.zero_rows << '\n';
  }
  std::cout << "wrote m3h.json\n";
  return 0;
}

// --------------------------------------------------------------- solve ----

template <FieldType F>
typename F::Elem eval_x(const F& field, const XPoly<F>& f,
                        const std::vector<typename F::Elem>& point) {
  auto total = field.zero();
  for (const auto& [m, c] : f.terms) {
    auto v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (Int e = 0; e < m[i]; ++e) v = field.mul(v, point[i]);
    total = field.add(total, v);
  }
  return total;
}

template <FieldType F>
json densemat_to_json(const F& field, const DenseMat<F>& M) {
  json rows = json::array();
  for (int i = 0; i < M.n; ++i) {
    json row = json::array();
    for (int j = 0; j < M.n; ++j) row.push_back(field.to_string(M.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <FieldType F>
json affpoly_to_json(const F& field, const AffPoly<F>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms)
    terms.push_back({{"exponents", io::point_to_json(m)}, {"coeff", field.to_string(c)}});
  return json{{"terms", terms}};
}

template <FieldType F>
int cmd_solve(const F& field, const io::Document& doc, const Options& opt) {
  if (doc.model != io::Document::Model::Multihom)
    throw io::ParseError(io::Errc::BadSchema, "solve needs a multihomogeneous-model input");
  MultihomRing ring(doc.multihom.blocks);
  XOrder ord(ring, xorder_kind_of(opt.order));
  auto original = io::to_multihom_polys(field, ring, ord, doc.multihom);

  std::vector<XPoly<F>> sys = original;
  bool changed = false;
  std::uint64_t used_seed = 0;
  std::vector<DenseMat<F>> change_mats;
  std::unique_ptr<MultihomSolver<F>> solver;
  const int max_retries = 5;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    solver = std::make_unique<MultihomSolver<F>>(field, ring, ord, sys);
    try {
      solver->monomial_basis();
      break;
    } catch (const SolutionsAtInfinityError&) {
      if (attempt == max_retries)
        throw io::ParseError(io::Errc::Runtime,
                             "solutions at infinity persisted after coordinate changes");
      used_seed = opt.seed + attempt;
      auto cc = change_coords(field, ring, ord, original, used_seed);
      sys = cc.system;
      change_mats = cc.matrices;
      changed = true;
    }
  }

  const auto& basis = solver->monomial_basis();
  const int m = static_cast<int>(basis.size());
  auto mats = solver->variable_mul_matrices();

  std::vector<Point> basis_aff;
  for (const Point& mono : basis) {
    Point a(ring.affine_vars(), 0);
    for (int b = 0; b < ring.r(); ++b)
      for (int jj = 1; jj <= ring.blocks[b]; ++jj)
        a[ring.affine_slot(b, jj)] = mono[ring.var_slot(b, jj)];
    basis_aff.push_back(std::move(a));
  }
  auto gb = lex_gb(field, mats, basis_aff);

  json j;
  j["model"] = "multihomogeneous";
  j["order"] = opt.order;
  j["seed"] = opt.seed;
  std::vector<std::vector<Int>> degs;
  for (const auto& f : original) degs.push_back(f.multidegree());
  j["bezout"] = oracle::bezout_count(degs, ring.blocks);
  j["bound"] = io::point_to_json(solver->bound_n());
  json jb = json::array();
  for (const Point& mono : basis) jb.push_back(io::xmono_to_json(ring, mono));
  j["basis"] = jb;
  j["basis_size"] = m;

  json jm = json::array();
  int vi = 0;
  for (int b = 0; b < ring.r(); ++b)
    for (int jj = 1; jj <= ring.blocks[b]; ++jj)
      jm.push_back({{"var", ring.var_name(b, jj)}, {"matrix", densemat_to_json(field, mats[vi++])}});
  j["mul_matrices"] = jm;

  json jgb = json::array();
  for (const auto& g : gb.polys) jgb.push_back(affpoly_to_json(field, g));
  j["lex_gb"] = jgb;
  j["shape_position"] = gb.shape_position;

  json jcoord;
  jcoord["applied"] = changed;
  if (changed) {
    jcoord["seed"] = used_seed;
    json mats_json = json::array();
    for (const auto& A : change_mats) mats_json.push_back(densemat_to_json(field, A));
    jcoord["matrices"] = mats_json;
  }
  j["coord_change"] = jcoord;

  if constexpr (std::is_same_v<F, PrimeField>) {
    if (field.modulus() <= (1u << 20)) {
      auto roots = find_roots(field, gb);
      json jr = json::array();
      for (const auto& pt : roots) {
        json coords = json::array();
        for (auto v : pt) coords.push_back(field.to_string(v));
        jr.push_back(coords);
      }
      j["roots"] = jr;
      // verify every root against the solved (possibly transformed) system
      for (const auto& pt : roots) {
        for (const auto& f : sys) {
          auto fbar = dehomogenize_x(field, ring, f);
          if (!field.is_zero(eval_aff(field, fbar, pt)))
            throw io::ParseError(io::Errc::Runtime, "internal: root fails a generator");
        }
      }
      if (changed) {
        // map roots back through the substitution: original = A * (1, vals)
        json jorig = json::array();
        for (const auto& pt : roots) {
          json blocks = json::array();
          std::vector<typename F::Elem> hom_point(ring.nvars(), field.zero());
          for (int b = 0; b < ring.r(); ++b) {
            std::vector<typename F::Elem> v(ring.blocks[b] + 1, field.zero());
            v[0] = field.one();
            for (int jj = 1; jj <= ring.blocks[b]; ++jj) v[jj] = pt[ring.affine_slot(b, jj)];
            json coords = json::array();
            for (int row = 0; row <= ring.blocks[b]; ++row) {
              auto acc = field.zero();
              for (int col = 0; col <= ring.blocks[b]; ++col)
                acc = field.add(acc, field.mul(change_mats[b].at(row, col), v[col]));
              hom_point[ring.var_slot(b, row)] = acc;
              coords.push_back(field.to_string(acc));
            }
            blocks.push_back(coords);
          }
          for (const auto& f : original)
            if (!field.is_zero(eval_x(field, f, hom_point)))
              throw io::ParseError(io::Errc::Runtime, "internal: mapped root fails a generator");
          jorig.push_back(blocks);
        }
        j["roots_original_projective"] = jorig;
      }
    } else {
      j["roots_note"] = "field too large for exhaustive root search (need p <= 2^20)";
    }
  } else {
    j["roots_note"] = "root extraction runs over small prime fields only";
  }

  write_json(opt.output_dir, "solve.json", j);
  std::cout << "basis size " << m << ", lex basis " << gb.polys.size()
            << " polynomials; wrote solve.json\n";
  return 0;
}

// --------------------------------------------------------------- bench ----

template <FieldType F>
int cmd_bench(const F& field, const io::Document& doc, const Options& opt) {
  if (doc.model != io::Document::Model::Sparse)
    throw io::ParseError(io::Errc::BadSchema, "bench needs a sparse-model input");
  SemigroupContext ctx = io::build_context(doc.sparse, opt.degree_cap);
  GradedSparseOrder ord(ctx, base_order_of(opt.order));
  auto polys = io::to_sparse_polys(field, ctx, ord, doc.sparse);

  // dense equivalents: replace the supports with total-degree simplices
  const int n = ctx.ambient_dim();
  long long tau = 1;
  for (const Point& g : ctx.generators()) tau = std::max(tau, point_total(g));
  std::vector<long long> dense_deg;  // total degree of each input polynomial
  for (const auto& f : polys) {
    long long dd = 0;
    for (const auto& [mono, c] : f.terms) dd = std::max(dd, point_total(mono.s));
    dense_deg.push_back(dd);
  }

  SgbOptions so;
  so.witness = parse_int_list(opt.witness);
  so.degree_cap = opt.max_degree;

  auto t0 = std::chrono::steady_clock::now();
  auto res = sgb_compute(field, ord, polys, so);
  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();

  std::ostringstream csv;
  csv << "step,degree,rows,cols,rank,zero_rows,dense_rows,dense_cols,wall_ms\n";
  for (const auto& st : res.stats) {
    const long long big_deg = tau * st.degree;
    long long dense_cols = binom(big_deg + n, n);
    long long dense_rows = 0;
    for (int i = 0; i < st.step; ++i)
      if (big_deg >= dense_deg[i]) dense_rows += binom(big_deg - dense_deg[i] + n, n);
    csv << st.step << ',' << st.degree << ',' << st.rows << ',' << st.cols << ',' << st.rank << ','
        << st.zero_rows << ',' << dense_rows << ',' << dense_cols << ',' << wall_ms << '\n';
  }
  write_text(opt.output_dir, "bench.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

// --------------------------------------------------------- oracle-check ----

struct CheckTable {
  bool all_ok = true;
  void row(const std::string& name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
    all_ok = all_ok && ok;
  }
};

template <FieldType F>
int cmd_oracle_check(const F& field, const io::Document& doc, const Options& opt) {
  CheckTable table;
  if (doc.model == io::Document::Model::Sparse) {
    SemigroupContext ctx = io::build_context(doc.sparse, opt.degree_cap);
    GradedSparseOrder ord(ctx, base_order_of(opt.order));
    auto polys = io::to_sparse_polys(field, ctx, ord, doc.sparse);

    bool delta_ok = true;
    for (const auto& mono : ctx.monomials_of_degree(3)) {
      auto fast = ctx.delta(mono.s);
      auto slow = oracle::delta_bruteforce(mono.s, ctx.generators(), 6);
      if (!fast || !slow || *fast != *slow) delta_ok = false;
    }
    table.row("affine degree matches exhaustive decomposition", delta_ok);

    SgbOptions so;
    so.witness = parse_int_list(opt.witness);
    if (so.witness.empty()) so.witness.assign(polys.size(), 4);
    SgbTrace<F> trace;
    auto res = sgb_compute(field, ord, polys, so, &trace);
    table.row("pruned matrices span the unpruned row spaces",
              oracle::trace_matches(field, ord, trace));

    bool zero_ok = true;
    for (const auto& st : res.stats) zero_ok = zero_ok && st.zero_rows == 0;
    table.row("no reductions to zero", zero_ok);

    bool member_ok = true;
    for (const auto& f : polys) {
      if (oracle::ideal_membership_bruteforce(field, ord, f, polys, so.witness[0] + 2) !=
          oracle::Membership::Member)
        member_ok = false;
      if (!polyops::divide(field, ord, f, res.basis).remainder.is_zero()) member_ok = false;
    }
    table.row("generators are members and reduce to zero", member_ok);
  } else {
    MultihomRing ring(doc.multihom.blocks);
    XOrder ord(ring, xorder_kind_of(opt.order));
    auto sys = io::to_multihom_polys(field, ring, ord, doc.multihom);
    std::vector<std::vector<Int>> degs;
    for (const auto& f : sys) degs.push_back(f.multidegree());
    auto dk = macaulay_bound(degs, ring.blocks);
    for (auto& v : dk) v = std::max<Int>(v, 0);

    M3hEngine<F> eng(field, ring, ord, sys);
    bool rank_ok = true;
    for (int bump = 0; bump <= 1; ++bump) {
      std::vector<Int> d = dk;
      for (auto& v : d) v += bump;
      const auto& R = eng.reduced(static_cast<int>(sys.size()), d);
      // unpruned rank from all multiplier shifts, dense elimination
      const auto& cols = eng.columns(d);
      std::map<Point, int, PointLess> col_of;
      for (std::size_t i = 0; i < cols.size(); ++i) col_of.emplace(cols[i], static_cast<int>(i));
      std::vector<std::vector<typename F::Elem>> rows;
      for (const auto& f : sys) {
        auto fd = f.multidegree();
        std::vector<Int> shift(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) shift[i] = d[i] - fd[i];
        for (const Point& beta : monomials_of_multidegree(ring, shift)) {
          std::vector<typename F::Elem> row(cols.size(), field.zero());
          for (const auto& [mono, c] : f.terms) row[col_of.at(point_add(mono, beta))] = c;
          rows.push_back(std::move(row));
        }
      }
      if (R.rank != oracle::rank_dense(field, rows)) rank_ok = false;
    }
    table.row("pruned recursion matches the unpruned rank", rank_ok);

    if (static_cast<int>(sys.size()) == ring.affine_vars()) {
      bool basis_ok = false, mats_ok = false;
      try {
        MultihomSolver<F> solver(field, ring, ord, sys);
        const auto& basis = solver.monomial_basis();
        basis_ok = static_cast<long long>(basis.size()) == oracle::bezout_count(degs, ring.blocks);
        auto mats = solver.variable_mul_matrices();
        mats_ok = true;
        for (std::size_t i = 0; i < mats.size() && mats_ok; ++i)
          for (std::size_t jj = i + 1; jj < mats.size() && mats_ok; ++jj)
            mats_ok = dm::equal(field, dm::mul(field, mats[i], mats[jj]),
                                dm::mul(field, mats[jj], mats[i]));
        for (const auto& f : sys) {
          auto fbar = dehomogenize_x(field, ring, f);
          if (!dm::is_zero(field, eval_aff_at_matrices(field, fbar, mats,
                                                       static_cast<int>(basis.size()))))
            mats_ok = false;
        }
      } catch (const MultihomError& e) {
        std::cout << "note: " << e.what() << '\n';
      }
      table.row("quotient dimension equals the Bezout count", basis_ok);
      table.row("multiplication maps commute and annihilate the generators", mats_ok);
    }
  }
  std::cout << (table.all_ok ? "oracle-check: all passed\n" : "oracle-check: FAILURES\n");
  return table.all_ok ? 0 : 1;
}

template <class Fn>
int with_field(const io::Document& doc, const Options& opt, Fn&& fn) {
  if (doc.field.kind == io::FieldSpec::Kind::Prime) {
    PrimeField field(opt.field_p ? opt.field_p : doc.field.p);
    return fn(field);
  }
  RationalField field;
  return fn(field);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sparse Groebner and multihomogeneous system solver"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "input document (JSON)")->required();
    cmd->add_option("--order", opt.order, "base monomial order: grevlex|lex");
    cmd->add_option("--degree-order", opt.degree_order, "degree-vector order (fixed: totlex)");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--field-p", opt.field_p, "override the prime modulus");
    cmd->add_option("--output-dir", opt.output_dir, "directory for output artifacts");
    cmd->add_option("--degree-cap", opt.degree_cap, "semigroup degree-level cap");
  };

  CLI::App* c_sgb = app.add_subcommand("sgb", "sparse Groebner basis of a sparse-model system");
  add_common(c_sgb);
  c_sgb->add_option("--witness", opt.witness, "per-generator witness degrees, e.g. 3,4");
  c_sgb->add_option("--max-degree", opt.max_degree, "auto-mode degree cap");

  CLI::App* c_m3h = app.add_subcommand("m3h", "graded Macaulay matrix of a multihomogeneous system");
  add_common(c_m3h);
  c_m3h->add_option("--degree", opt.degree, "target multidegree, e.g. 2,1")->required();

  CLI::App* c_solve =
      app.add_subcommand("solve", "monomial basis, multiplication maps, lex basis, roots");
  add_common(c_solve);

  CLI::App* c_bench = app.add_subcommand("bench", "per-degree matrix statistics as CSV");
  add_common(c_bench);
  c_bench->add_option("--witness", opt.witness, "per-generator witness degrees");
  c_bench->add_option("--max-degree", opt.max_degree, "auto-mode degree cap");

  CLI::App* c_check =
      app.add_subcommand("oracle-check", "cross-validate against brute-force references");
  add_common(c_check);
  c_check->add_option("--witness", opt.witness, "witness degrees for the trace check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt.degree_order != "totlex")
      throw io::ParseError(io::Errc::BadSchema, "--degree-order supports only 'totlex'");
    io::Document doc = io::parse_file(opt.input);
    if (c_sgb->parsed()) return with_field(doc, opt, [&](auto& f) { return cmd_sgb(f, doc, opt); });
    if (c_m3h->parsed()) return with_field(doc, opt, [&](auto& f) { return cmd_m3h(f, doc, opt); });
    if (c_solve->parsed())
      return with_field(doc, opt, [&](auto& f) { return cmd_solve(f, doc, opt); });
    if (c_bench->parsed())
      return with_field(doc, opt, [&](auto& f) { return cmd_bench(f, doc, opt); });
    if (c_check->parsed())
      return with_field(doc, opt, [&](auto& f) { return cmd_oracle_check(f, doc, opt); });
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(io::Errc::Runtime);
  }
  return 0;
}
