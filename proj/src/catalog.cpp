#include "redtensor/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rtp {

namespace {

Matrix<Cyc> scalar_matrix(const Cyc& v) {
  Matrix<Cyc> m(1, 1);
  m.at(0, 0) = v;
  return m;
}

void init_tables(FusionCategory& C, std::size_t rank) {
  C.N.assign(rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0)));
  C.dual.assign(rank, 0);
}

bool is_unit_leg(const FusionCategory& C, Label a, Label b, Label c) {
  return a == C.unit || b == C.unit || c == C.unit;
}

// store every non-unit-leg F entry, defaulting to 1 where fusion allows
void fill_trivial_F(FusionCategory& C) {
  Label R = (Label)C.rank();
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b)
      for (Label c = 0; c < R; ++c) {
        if (is_unit_leg(C, a, b, c)) continue;
        for (Label d = 0; d < R; ++d)
          for (Label e = 0; e < R; ++e)
            for (Label f = 0; f < R; ++f) {
              std::size_t nr = (std::size_t)C.n(a, b, e) * C.n(e, c, d);
              std::size_t nc = (std::size_t)C.n(b, c, f) * C.n(a, f, d);
              if (nr == 0 || nc == 0) continue;
              std::array<Label, 6> key{a, b, c, d, e, f};
              if (C.Fsym.count(key)) continue;
              if (nr == 1 && nc == 1)
                C.Fsym[key] = scalar_matrix(Cyc(1));
              else
                throw std::logic_error("fill_trivial_F on multiplicity data");
            }
      }
}

void fill_trivial_R(FusionCategory& C) {
  Label R = (Label)C.rank();
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b) {
      if (a == C.unit || b == C.unit) continue;
      for (Label c = 0; c < R; ++c) {
        if (C.n(a, b, c) == 0) continue;
        std::array<Label, 3> key{a, b, c};
        if (!C.Rsym.count(key)) C.Rsym[key] = scalar_matrix(Cyc(1));
      }
    }
}

// ---- pointed categories -----------------------------------------------------

// group Z2 x Z2 with labels encoded as (bit0, bit1)
struct Z22 {
  static int mul(int x, int y) { return x ^ y; }
  static int b0(int x) { return x & 1; }
  static int b1(int x) { return (x >> 1) & 1; }
};

FusionCategory make_pointed_z2(const std::string& name, const Cyc& r_chichi,
                               const std::string& gen_label) {
  FusionCategory C;
  C.name = name;
  C.labels = {"1", gen_label};
  C.unit = 0;
  init_tables(C, 2);
  C.dual = {0, 1};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) C.N[x][y][x ^ y] = 1;
  C.dim = {Cyc(1), Cyc(1)};
  C.braided = true;
  fill_trivial_F(C);
  C.Rsym[{1, 1, 0}] = scalar_matrix(r_chichi);
  C.twist = twists_from_R(C);
  C.symmetric = mueger_centre(C).size() == 2;
  return C;
}

FusionCategory make_vec() {
  FusionCategory C;
  C.name = "Vec";
  C.labels = {"1"};
  C.unit = 0;
  init_tables(C, 1);
  C.N[0][0][0] = 1;
  C.dim = {Cyc(1)};
  C.twist = {Cyc(1)};
  C.braided = true;
  C.symmetric = true;
  return C;
}

FusionCategory make_repz3() {
  FusionCategory C;
  C.name = "RepZ3";
  C.labels = {"1", "w", "w2"};
  C.unit = 0;
  init_tables(C, 3);
  C.dual = {0, 2, 1};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) C.N[x][y][(x + y) % 3] = 1;
  C.dim = {Cyc(1), Cyc(1), Cyc(1)};
  C.braided = true;
  fill_trivial_F(C);
  fill_trivial_R(C);
  C.twist = {Cyc(1), Cyc(1), Cyc(1)};
  C.symmetric = true;
  return C;
}

// semion / anti-semion: Z2 pointed with the nontrivial associator
FusionCategory make_semion(const std::string& name, const std::string& gen, const Cyc& r) {
  FusionCategory C;
  C.name = name;
  C.labels = {"1", gen};
  C.unit = 0;
  init_tables(C, 2);
  C.dual = {0, 1};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) C.N[x][y][x ^ y] = 1;
  C.dim = {Cyc(1), Cyc(1)};
  C.braided = true;
  C.Fsym[{1, 1, 1, 1, 0, 0}] = scalar_matrix(Cyc(-1));
  C.Rsym[{1, 1, 0}] = scalar_matrix(r);
  C.twist = twists_from_R(C);
  C.symmetric = false;
  return C;
}

FusionCategory make_toric_code(const std::string& name) {
  FusionCategory C;
  C.name = name;
  C.labels = {"1", "e", "m", "f"};  // e=(1,0), m=(0,1), f=(1,1)
  C.unit = 0;
  init_tables(C, 4);
  C.dual = {0, 1, 2, 3};
  auto enc = [](int b0, int b1) { return b0 | (b1 << 1); };
  (void)enc;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) C.N[x][y][x ^ y] = 1;
  C.dim = {Cyc(1), Cyc(1), Cyc(1), Cyc(1)};
  C.braided = true;
  fill_trivial_F(C);
  // R(x, y) = (-1)^{x.bit1 * y.bit0}
  for (int x = 1; x < 4; ++x)
    for (int y = 1; y < 4; ++y) {
      int sgn = (Z22::b1(x) * Z22::b0(y)) % 2;
      C.Rsym[{x, y, x ^ y}] = scalar_matrix(Cyc(sgn ? -1 : 1));
    }
  C.twist = twists_from_R(C);
  C.symmetric = false;
  return C;
}

// Deligne product of two pointed rank-2 braided categories
FusionCategory make_double_semion() {
  FusionCategory C;
  C.name = "DoubleSemion";
  C.labels = {"1", "s", "sb", "ssb"};  // s=(1,0), sb=(0,1), ssb=(1,1)
  C.unit = 0;
  init_tables(C, 4);
  C.dual = {0, 1, 2, 3};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) C.N[x][y][x ^ y] = 1;
  C.dim = {Cyc(1), Cyc(1), Cyc(1), Cyc(1)};
  C.braided = true;
  Cyc i4 = Cyc::root_of_unity(4);
  // F(x,y,z) = (-1)^{x0 y0 z0} * (-1)^{x1 y1 z1}
  for (int x = 1; x < 4; ++x)
    for (int y = 1; y < 4; ++y)
      for (int z = 1; z < 4; ++z) {
        int sgn = (Z22::b0(x) & Z22::b0(y) & Z22::b0(z)) ^ (Z22::b1(x) & Z22::b1(y) & Z22::b1(z));
        C.Fsym[{x, y, z, x ^ y ^ z, x ^ y, y ^ z}] = scalar_matrix(Cyc(sgn ? -1 : 1));
      }
  // R(x,y) = i^{x0 y0} * (-i)^{x1 y1}
  for (int x = 1; x < 4; ++x)
    for (int y = 1; y < 4; ++y) {
      Cyc v(1);
      if (Z22::b0(x) & Z22::b0(y)) v *= i4;
      if (Z22::b1(x) & Z22::b1(y)) v *= i4.pow(3);
      C.Rsym[{x, y, x ^ y}] = scalar_matrix(v);
    }
  C.twist = twists_from_R(C);
  C.symmetric = false;
  return C;
}

FusionCategory make_ising(int nu) {
  FusionCategory C;
  C.name = "Ising" + std::to_string(nu);
  C.labels = {"1", "psi", "sigma"};
  C.unit = 0;
  init_tables(C, 3);
  C.dual = {0, 1, 2};
  C.N[0][0][0] = 1;
  C.N[0][1][1] = C.N[1][0][1] = 1;
  C.N[0][2][2] = C.N[2][0][2] = 1;
  C.N[1][1][0] = 1;
  C.N[1][2][2] = C.N[2][1][2] = 1;
  C.N[2][2][0] = C.N[2][2][1] = 1;
  Cyc sqrt2 = Cyc::root_of_unity(8) - Cyc::root_of_unity(8).pow(3);
  C.dim = {Cyc(1), Cyc(1), sqrt2};
  C.braided = true;
  int kappa = ((nu * nu - 1) / 8) % 2 == 0 ? 1 : -1;
  fill_trivial_F(C);
  C.Fsym[{1, 2, 1, 2, 2, 2}] = scalar_matrix(Cyc(-1));  // F[psi sigma psi]_sigma
  C.Fsym[{2, 1, 2, 1, 2, 2}] = scalar_matrix(Cyc(-1));  // F[sigma psi sigma]_psi
  {
    // F[sigma sigma sigma]_sigma over intermediate channels (1, psi)
    Cyc inv_sqrt2 = sqrt2.inv() * Cyc(kappa);
    C.Fsym[{2, 2, 2, 2, 0, 0}] = scalar_matrix(inv_sqrt2);
    C.Fsym[{2, 2, 2, 2, 0, 1}] = scalar_matrix(inv_sqrt2);
    C.Fsym[{2, 2, 2, 2, 1, 0}] = scalar_matrix(inv_sqrt2);
    C.Fsym[{2, 2, 2, 2, 1, 1}] = scalar_matrix(-inv_sqrt2);
  }
  Cyc e16 = Cyc::root_of_unity(16);
  C.Rsym[{1, 1, 0}] = scalar_matrix(Cyc(-1));
  C.Rsym[{2, 2, 0}] = scalar_matrix(Cyc(kappa) * e16.pow(-nu));
  C.Rsym[{2, 2, 1}] = scalar_matrix(Cyc(kappa) * e16.pow(3 * nu));
  Cyc r_ps = Cyc::root_of_unity(4).pow(-nu);
  C.Rsym[{1, 2, 2}] = scalar_matrix(r_ps);
  C.Rsym[{2, 1, 2}] = scalar_matrix(r_ps);
  C.twist = twists_from_R(C);
  C.symmetric = false;
  return C;
}

// ---- Rep(S3), F- and R-symbols derived from explicit rational intertwiners --

FusionCategory make_reps3() {
  using M = Matrix<Rat>;
  // simple objects: 1 (trivial), sgn, pi (2-dim standard rep)
  // pi generators: r = (123) -> [[0,-1],[1,-1]], t = (12) -> [[0,1],[1,0]]
  auto mk = [](std::size_t rr, std::size_t cc, std::initializer_list<long> vals) {
    M m(rr, cc);
    std::size_t k = 0;
    for (long v : vals) {
      m.at(k / cc, k % cc) = Rat(v);
      ++k;
    }
    return m;
  };
  const int labels[3] = {0, 1, 2};
  (void)labels;
  const std::size_t dim_of[3] = {1, 1, 2};
  M r_pi = mk(2, 2, {0, -1, 1, -1});
  M t_pi = mk(2, 2, {0, 1, 1, 0});
  M r_sgn = mk(1, 1, {1}), t_sgn = mk(1, 1, {-1});
  M r_one = mk(1, 1, {1}), t_one = mk(1, 1, {1});
  auto rep_r = [&](int a) { return a == 0 ? r_one : (a == 1 ? r_sgn : r_pi); };
  auto rep_t = [&](int a) { return a == 0 ? t_one : (a == 1 ? t_sgn : t_pi); };

  // chosen fusion intertwiners Y^{ab}_c : V_a (x) V_b -> V_c (non-unit legs)
  std::map<std::array<int, 3>, M> Y;
  Y[{1, 1, 0}] = mk(1, 1, {1});
  M mM = mk(2, 2, {1, -2, 2, -1});  // r - r^2, intertwiner sgn (x) pi -> pi
  Y[{1, 2, 2}] = mM;
  Y[{2, 1, 2}] = mM;
  Y[{2, 2, 0}] = mk(1, 4, {2, -1, -1, 2});
  Y[{2, 2, 1}] = mk(1, 4, {0, 1, -1, 0});
  Y[{2, 2, 2}] = mk(2, 4, {1, -1, -1, 0, 0, -1, -1, 1});

  // verify equivariance of every chosen intertwiner
  for (auto& [key, y] : Y) {
    auto [a, b, c] = key;
    M lr = rep_r(c) * y, rr2 = y * rep_r(a).kron(rep_r(b));
    M lt = rep_t(c) * y, rt = y * rep_t(a).kron(rep_t(b));
    if (lr != rr2 || lt != rt) throw std::logic_error("RepS3 intertwiner not equivariant");
  }

  FusionCategory C;
  C.name = "RepS3";
  C.labels = {"1", "sgn", "pi"};
  C.unit = 0;
  init_tables(C, 3);
  C.dual = {0, 1, 2};
  C.N[0][0][0] = 1;
  C.N[0][1][1] = C.N[1][0][1] = 1;
  C.N[0][2][2] = C.N[2][0][2] = 1;
  C.N[1][1][0] = 1;
  C.N[1][2][2] = C.N[2][1][2] = 1;
  C.N[2][2][0] = C.N[2][2][1] = C.N[2][2][2] = 1;
  C.dim = {Cyc(1), Cyc(1), Cyc(2)};
  C.braided = true;

  auto getY = [&](int a, int b, int c) -> M {
    if (a == 0) return M::identity(dim_of[b]);  // c == b
    if (b == 0) return M::identity(dim_of[a]);
    return Y.at({a, b, c});
  };

  // F[a b c]_d: expand Y^{ec}_d (Y^{ab}_e (x) 1) over Y^{af}_d (1 (x) Y^{bc}_f)
  for (int a = 1; a < 3; ++a)
    for (int b = 1; b < 3; ++b)
      for (int c = 1; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          std::vector<int> es, fs;
          for (int e = 0; e < 3; ++e)
            if (C.n(a, b, e) && C.n(e, c, d)) es.push_back(e);
          for (int f = 0; f < 3; ++f)
            if (C.n(b, c, f) && C.n(a, f, d)) fs.push_back(f);
          if (es.empty()) continue;
          std::size_t total = dim_of[a] * dim_of[b] * dim_of[c];
          // right-hand family as columns
          M rhs(dim_of[d] * total, fs.size());
          for (std::size_t j = 0; j < fs.size(); ++j) {
            M T2 = getY(a, fs[j], d) * M::identity(dim_of[a]).kron(getY(b, c, fs[j]));
            for (std::size_t p = 0; p < T2.rows(); ++p)
              for (std::size_t q = 0; q < T2.cols(); ++q) rhs.at(p * total + q, j) = T2.at(p, q);
          }
          for (int e : es) {
            M T1 = getY(e, c, d) * getY(a, b, e).kron(M::identity(dim_of[c]));
            M b_vec(dim_of[d] * total, 1);
            for (std::size_t p = 0; p < T1.rows(); ++p)
              for (std::size_t q = 0; q < T1.cols(); ++q) b_vec.at(p * total + q, 0) = T1.at(p, q);
            auto sol = rhs.solve(b_vec);
            if (!sol) throw std::logic_error("RepS3 F-symbol solve failed");
            for (std::size_t j = 0; j < fs.size(); ++j)
              C.Fsym[{a, b, c, d, e, fs[j]}] = scalar_matrix(Cyc(sol->at(j, 0)));
          }
        }

  // R[a b]_c from Y^{ba}_c of the swap
  for (int a = 1; a < 3; ++a)
    for (int b = 1; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        if (C.n(a, b, c) == 0) continue;
        // swap: V_a (x) V_b -> V_b (x) V_a
        std::size_t da = dim_of[a], db = dim_of[b];
        M swap(db * da, da * db);
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j) swap.at(j * da + i, i * db + j) = Rat(1);
        M lhs = getY(b, a, c) * swap;
        M ref = getY(a, b, c);
        // lhs = R * ref with scalar R
        Rat rv;
        bool found = false;
        for (std::size_t p = 0; p < ref.rows() && !found; ++p)
          for (std::size_t q = 0; q < ref.cols() && !found; ++q)
            if (ref.at(p, q) != 0) {
              rv = lhs.at(p, q) / ref.at(p, q);
              found = true;
            }
        if (!found) throw std::logic_error("RepS3 R-symbol solve failed");
        if (lhs != ref.scaled(rv)) throw std::logic_error("RepS3 swap is not scalar on channel");
        C.Rsym[{a, b, c}] = scalar_matrix(Cyc(rv));
      }
  C.twist = twists_from_R(C);
  C.symmetric = true;
  return C;
}

CatalogEntry with_inclusions(FusionCategory cat, std::vector<IncludeSpec> inc) {
  CatalogEntry e;
  e.name = cat.name;
  e.cat = std::move(cat);
  e.inclusions = std::move(inc);
  return e;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"Vec",    "sVec",   "RepZ2",  "RepZ3",   "RepS3",     "Semion",
          "Ising1", "Ising3", "Ising5", "Ising7",  "Ising9",    "Ising11",
          "Ising13", "Ising15", "ToricCode", "DoubleSemion", "ZsVec"};
}

CatalogEntry builtin(const std::string& name) {
  if (name == "Vec") return with_inclusions(make_vec(), {});
  if (name == "sVec")
    return with_inclusions(make_pointed_z2("sVec", Cyc(-1), "f"), {});
  if (name == "RepZ2")
    return with_inclusions(make_pointed_z2("RepZ2", Cyc(1), "chi"), {});
  if (name == "RepZ3") return with_inclusions(make_repz3(), {});
  if (name == "RepS3") return with_inclusions(make_reps3(), {});
  if (name == "Semion")
    return with_inclusions(make_semion("Semion", "s", Cyc::root_of_unity(4)), {});
  if (name.rfind("Ising", 0) == 0) {
    std::string tail = name.substr(5);
    if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
      int nu = std::stoi(tail);
      if (nu % 2 == 1 && nu >= 1 && nu <= 15) {
        IncludeSpec inc{"sVec", {{"1", {"1"}}, {"f", {"psi"}}}};
        return with_inclusions(make_ising(nu), {inc});
      }
    }
    throw UnknownName("unknown builtin " + name);
  }
  if (name == "ToricCode") {
    IncludeSpec inc{"RepZ2", {{"1", {"1"}}, {"chi", {"e"}}}};
    return with_inclusions(make_toric_code("ToricCode"), {inc});
  }
  if (name == "ZsVec") {
    // Z(sVec) has the toric-code tables; sVec embeds onto {1, f}
    IncludeSpec inc{"sVec", {{"1", {"1"}}, {"f", {"f"}}}};
    return with_inclusions(make_toric_code("ZsVec"), {inc});
  }
  if (name == "DoubleSemion") {
    IncludeSpec inc{"RepZ2", {{"1", {"1"}}, {"chi", {"ssb"}}}};
    return with_inclusions(make_double_semion(), {inc});
  }
  throw UnknownName("unknown builtin " + name);
}

// ---- file format -------------------------------------------------------------

namespace {

struct Tok {
  std::string text;
  std::size_t line, col;
};

std::vector<std::vector<Tok>> tokenize(const std::string& text) {
  std::vector<std::vector<Tok>> lines;
  std::size_t lineno = 1;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace((unsigned char)raw[i])) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace((unsigned char)raw[i])) ++i;
      toks.push_back({raw.substr(start, i - start), lineno, start + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    ++lineno;
  }
  return lines;
}

}  // namespace

CatalogEntry parse_category_file(const std::string& text) {
  auto lines = tokenize(text);
  CatalogEntry entry;
  FusionCategory& C = entry.cat;
  bool have_simples = false;
  std::map<std::string, Label> index;
  std::vector<std::array<std::string, 2>> dual_pairs;
  struct FusLine {
    Tok a, b;
    std::vector<Tok> cs;
  };
  std::vector<FusLine> fusions;
  struct FLine {
    Tok a, b, c, d, e, f;
    Cyc v;
  };
  std::vector<FLine> fents;
  struct RLine {
    Tok a, b, c;
    Cyc v;
  };
  std::vector<RLine> rents;
  std::map<std::string, Cyc> dims, twists;
  bool saw_twist = false;

  auto want = [&](const std::vector<Tok>& l, std::size_t n) {
    if (l.size() < n) throw FileSyntaxError(l[0].line, l[0].col, "too few tokens");
  };
  auto parse_scalar = [&](const std::vector<Tok>& l, std::size_t from) {
    std::string s;
    for (std::size_t i = from; i < l.size(); ++i) s += l[i].text;
    try {
      return Cyc::parse(s);
    } catch (const ScalarParseError& e) {
      throw FileSyntaxError(l[from].line, l[from].col, e.what());
    }
  };

  for (auto& l : lines) {
    const std::string& kw = l[0].text;
    if (kw == "category") {
      want(l, 2);
      entry.name = l[1].text;
      C.name = l[1].text;
    } else if (kw == "simples") {
      want(l, 2);
      for (std::size_t i = 1; i < l.size(); ++i) {
        if (index.count(l[i].text))
          throw FileSyntaxError(l[i].line, l[i].col, "duplicate label " + l[i].text);
        index[l[i].text] = (Label)C.labels.size();
        C.labels.push_back(l[i].text);
      }
      have_simples = true;
      init_tables(C, C.labels.size());
    } else if (kw == "unit") {
      want(l, 2);
      if (!index.count(l[1].text))
        throw FileSyntaxError(l[1].line, l[1].col, "unknown label " + l[1].text);
      C.unit = index[l[1].text];
    } else if (kw == "dual") {
      for (std::size_t i = 1; i < l.size(); ++i) {
        auto pos = l[i].text.find('=');
        if (pos == std::string::npos)
          throw FileSyntaxError(l[i].line, l[i].col, "expected l=l in dual line");
        dual_pairs.push_back({l[i].text.substr(0, pos), l[i].text.substr(pos + 1)});
      }
    } else if (kw == "fusion") {
      want(l, 5);
      if (l[3].text != "->") throw FileSyntaxError(l[3].line, l[3].col, "expected ->");
      FusLine fl{l[1], l[2], {}};
      for (std::size_t i = 4; i < l.size(); ++i) {
        // split on '+'
        std::string cur;
        std::size_t coloff = 0;
        for (std::size_t k = 0; k <= l[i].text.size(); ++k) {
          if (k == l[i].text.size() || l[i].text[k] == '+') {
            if (!cur.empty()) fl.cs.push_back({cur, l[i].line, l[i].col + coloff});
            cur.clear();
            coloff = k + 1;
          } else
            cur += l[i].text[k];
        }
      }
      fusions.push_back(std::move(fl));
    } else if (kw == "dim") {
      want(l, 4);
      if (l[2].text != "=") throw FileSyntaxError(l[2].line, l[2].col, "expected =");
      dims[l[1].text] = parse_scalar(l, 3);
    } else if (kw == "twist") {
      want(l, 4);
      if (l[2].text != "=") throw FileSyntaxError(l[2].line, l[2].col, "expected =");
      twists[l[1].text] = parse_scalar(l, 3);
      saw_twist = true;
    } else if (kw == "F") {
      want(l, 9);
      if (l[5].text != ":") throw FileSyntaxError(l[5].line, l[5].col, "expected :");
      auto arrow = l[6].text.find("->");
      if (arrow == std::string::npos)
        throw FileSyntaxError(l[6].line, l[6].col, "expected e->f");
      if (l[7].text != "=") throw FileSyntaxError(l[7].line, l[7].col, "expected =");
      FLine fl{l[1],
               l[2],
               l[3],
               l[4],
               {l[6].text.substr(0, arrow), l[6].line, l[6].col},
               {l[6].text.substr(arrow + 2), l[6].line, l[6].col + arrow + 2},
               parse_scalar(l, 8)};
      fents.push_back(std::move(fl));
    } else if (kw == "R") {
      want(l, 7);
      if (l[3].text != ":") throw FileSyntaxError(l[3].line, l[3].col, "expected :");
      if (l[5].text != "=") throw FileSyntaxError(l[5].line, l[5].col, "expected =");
      rents.push_back({l[1], l[2], l[4], parse_scalar(l, 6)});
    } else if (kw == "include") {
      want(l, 4);
      if (l[2].text != ":") throw FileSyntaxError(l[2].line, l[2].col, "expected :");
      IncludeSpec inc;
      inc.a_name = l[1].text;
      for (std::size_t i = 3; i < l.size(); ++i) {
        auto arrow = l[i].text.find("->");
        if (arrow == std::string::npos)
          throw FileSyntaxError(l[i].line, l[i].col, "expected a->objectexpr");
        std::string a = l[i].text.substr(0, arrow);
        std::string rest = l[i].text.substr(arrow + 2);
        std::vector<std::string> parts;
        std::string cur;
        for (std::size_t k = 0; k <= rest.size(); ++k) {
          if (k == rest.size() || rest[k] == '+') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
          } else
            cur += rest[k];
        }
        inc.obj_map[a] = parts;
      }
      entry.inclusions.push_back(std::move(inc));
    } else {
      throw FileSyntaxError(l[0].line, l[0].col, "unknown keyword " + kw);
    }
  }

  if (!have_simples) throw SemanticError("file has no simples line");
  auto look = [&](const Tok& t) -> Label {
    auto it = index.find(t.text);
    if (it == index.end())
      throw FileSyntaxError(t.line, t.col, "unknown label " + t.text);
    return it->second;
  };
  for (auto& [x, y] : dual_pairs) {
    Tok tx{x, 0, 0}, ty{y, 0, 0};
    if (!index.count(x) || !index.count(y)) throw SemanticError("unknown label in dual line");
    C.dual[index[x]] = index[y];
    (void)tx;
    (void)ty;
  }
  for (auto& fl : fusions) {
    Label a = look(fl.a), b = look(fl.b);
    for (auto& ct : fl.cs) C.N[a][b][look(ct)] += 1;
  }
  // dims
  C.dim.assign(C.rank(), Cyc(0));
  for (Label a = 0; a < (Label)C.rank(); ++a) {
    auto it = dims.find(C.labels[a]);
    if (it == dims.end()) throw SemanticError("missing dim for label " + C.labels[a]);
    C.dim[a] = it->second;
  }
  if (saw_twist) {
    C.twist.assign(C.rank(), Cyc(0));
    for (Label a = 0; a < (Label)C.rank(); ++a) {
      auto it = twists.find(C.labels[a]);
      if (it == twists.end()) throw SemanticError("missing twist for label " + C.labels[a]);
      C.twist[a] = it->second;
    }
  }
  for (auto& fe : fents) {
    Label a = look(fe.a), b = look(fe.b), c = look(fe.c), d = look(fe.d), e = look(fe.e),
          f = look(fe.f);
    if (a == C.unit || b == C.unit || c == C.unit)
      throw SemanticError("unit-leg F entries are fixed to the identity and may not appear");
    C.Fsym[{a, b, c, d, e, f}] = scalar_matrix(fe.v);
  }
  for (auto& re : rents) {
    Label a = look(re.a), b = look(re.b), c = look(re.c);
    if (a == C.unit || b == C.unit)
      throw SemanticError("unit-leg R entries are fixed to the identity and may not appear");
    C.Rsym[{a, b, c}] = scalar_matrix(re.v);
  }
  // completeness of F table; braided iff the R table is complete
  for (Label a = 0; a < (Label)C.rank(); ++a)
    for (Label b = 0; b < (Label)C.rank(); ++b)
      for (Label c = 0; c < (Label)C.rank(); ++c) {
        if (a == C.unit || b == C.unit || c == C.unit) continue;
        for (Label d = 0; d < (Label)C.rank(); ++d)
          for (Label e = 0; e < (Label)C.rank(); ++e)
            for (Label f = 0; f < (Label)C.rank(); ++f) {
              std::size_t nr = (std::size_t)C.n(a, b, e) * C.n(e, c, d);
              std::size_t nc = (std::size_t)C.n(b, c, f) * C.n(a, f, d);
              if (nr == 0 || nc == 0) continue;
              if (!C.Fsym.count({a, b, c, d, e, f}))
                throw SemanticError("missing F entry " + C.labels[a] + " " + C.labels[b] + " " +
                                    C.labels[c] + " " + C.labels[d] + " : " + C.labels[e] + "->" +
                                    C.labels[f]);
            }
      }
  std::size_t needed = 0, present = 0;
  for (Label a = 0; a < (Label)C.rank(); ++a)
    for (Label b = 0; b < (Label)C.rank(); ++b) {
      if (a == C.unit || b == C.unit) continue;
      for (Label c = 0; c < (Label)C.rank(); ++c) {
        if (C.n(a, b, c) == 0) continue;
        ++needed;
        if (C.Rsym.count({a, b, c})) ++present;
      }
    }
  if (present == needed)
    C.braided = true;
  else if (present == 0)
    C.braided = false;
  else
    throw SemanticError("incomplete R table: " + std::to_string(present) + " of " +
                        std::to_string(needed) + " entries present");
  if (C.rank() == 1) C.braided = true;
  if (C.braided && !saw_twist) C.twist = twists_from_R(C);
  if (!C.braided && saw_twist) throw SemanticError("twist lines without a braiding");
  C.symmetric = C.braided && mueger_centre(C).size() == C.rank();
  return entry;
}

std::string serialize_category_file(const CatalogEntry& entry) {
  const FusionCategory& C = entry.cat;
  std::ostringstream os;
  os << "category " << entry.name << "\n";
  os << "simples";
  for (auto& l : C.labels) os << " " << l;
  os << "\n";
  os << "unit " << C.labels[C.unit] << "\n";
  os << "dual";
  for (Label a = 0; a < (Label)C.rank(); ++a)
    os << " " << C.labels[a] << "=" << C.labels[C.dual[a]];
  os << "\n";
  for (Label a = 0; a < (Label)C.rank(); ++a)
    for (Label b = 0; b < (Label)C.rank(); ++b) {
      bool any = false;
      for (Label c = 0; c < (Label)C.rank(); ++c)
        if (C.n(a, b, c)) any = true;
      if (!any) continue;
      os << "fusion " << C.labels[a] << " " << C.labels[b] << " ->";
      bool first = true;
      for (Label c = 0; c < (Label)C.rank(); ++c)
        for (int k = 0; k < C.n(a, b, c); ++k) {
          os << (first ? " " : "+") << C.labels[c];
          first = false;
        }
      os << "\n";
    }
  for (Label a = 0; a < (Label)C.rank(); ++a)
    os << "dim " << C.labels[a] << " = " << C.dim[a].canonical().str() << "\n";
  if (C.braided && !C.twist.empty())
    for (Label a = 0; a < (Label)C.rank(); ++a)
      os << "twist " << C.labels[a] << " = " << C.twist[a].canonical().str() << "\n";
  for (auto& [key, m] : C.Fsym) {
    auto [a, b, c, d, e, f] = key;
    if (a == C.unit || b == C.unit || c == C.unit) continue;
    if (m.rows() != 1 || m.cols() != 1)
      throw SemanticError("file format supports multiplicity-free F entries only");
    os << "F " << C.labels[a] << " " << C.labels[b] << " " << C.labels[c] << " " << C.labels[d]
       << " : " << C.labels[e] << "->" << C.labels[f] << " = " << m.at(0, 0).canonical().str()
       << "\n";
  }
  for (auto& [key, m] : C.Rsym) {
    auto [a, b, c] = key;
    if (a == C.unit || b == C.unit) continue;
    if (m.rows() != 1 || m.cols() != 1)
      throw SemanticError("file format supports multiplicity-free R entries only");
    os << "R " << C.labels[a] << " " << C.labels[b] << " : " << C.labels[c] << " = "
       << m.at(0, 0).canonical().str() << "\n";
  }
  for (auto& inc : entry.inclusions) {
    os << "include " << inc.a_name << " :";
    for (auto& [a, parts] : inc.obj_map) {
      os << " " << a << "->";
      for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace rtp
