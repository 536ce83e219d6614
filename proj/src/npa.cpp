#include "hardy/npa.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hardy {

NpaLevel parse_npa_level(const std::string& s) {
  if (s == "1") return NpaLevel::One;
  if (s == "1+AB") return NpaLevel::OneAB;
  throw std::invalid_argument("unknown relaxation level '" + s + "' (expected 1 or 1+AB)");
}

std::string to_string(NpaLevel level) { return level == NpaLevel::One ? "1" : "1+AB"; }

double LinearForm::evaluate(const Eigen::VectorXd& y) const {
  double v = constant;
  for (const auto& [i, c] : coefs) v += c * y(i);
  return v;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  constant += o.constant;
  for (const auto& [i, c] : o.coefs) {
    const double sum = (coefs[i] += c);
    if (sum == 0.0) coefs.erase(i);
  }
  return *this;
}

LinearForm& LinearForm::operator*=(double s) {
  constant *= s;
  for (auto& [i, c] : coefs) c *= s;
  std::erase_if(coefs, [](const auto& kv) { return kv.second == 0.0; });
  return *this;
}

namespace {

using Word = std::vector<Projector>;

std::string word_string(char party, const Word& w) {
  std::string s;
  for (const auto& p : w)
    s += std::string(1, party) + "(" + std::to_string(p.outcome) + "|" +
         std::to_string(p.input) + ")";
  return s;
}

// Idempotence and same-input orthogonality; nullopt when the product vanishes.
std::optional<Word> reduce(const Word& w) {
  Word out;
  for (const auto& p : w) {
    if (!out.empty() && out.back().input == p.input) {
      if (out.back().outcome != p.outcome) return std::nullopt;
      continue;
    }
    out.push_back(p);
  }
  return out;
}

Monomial canonical(Monomial m) {
  Monomial rev{{m.alice.rbegin(), m.alice.rend()}, {m.bob.rbegin(), m.bob.rend()}};
  return std::min(m, rev);
}

Monomial parse_monomial(const std::string& label) {
  Monomial m;
  if (label == "1") return m;
  std::size_t pos = 0;
  while (pos < label.size()) {
    const char party = label[pos];
    int a = 0, x = 0, used = 0;
    if ((party != 'A' && party != 'B') ||
        std::sscanf(label.c_str() + pos + 1, "(%d|%d)%n", &a, &x, &used) != 2) {
      throw std::invalid_argument("malformed moment label '" + label + "'");
    }
    (party == 'A' ? m.alice : m.bob).push_back({x, a});
    pos += 1 + used;
  }
  return m;
}

struct Operator {
  Word alice;
  Word bob;
};

std::vector<Operator> operators(const Scenario& sc, NpaLevel level) {
  std::vector<Operator> ops{{}};
  std::vector<Projector> single;
  for (int x = 0; x < sc.k; ++x)
    for (int a = 0; a + 1 < sc.d; ++a) single.push_back({x, a});
  for (const auto& p : single) ops.push_back({{p}, {}});
  for (const auto& p : single) ops.push_back({{}, {p}});
  if (level == NpaLevel::OneAB) {
    for (const auto& pa : single)
      for (const auto& pb : single) ops.push_back({{pa}, {pb}});
  }
  return ops;
}

std::string operator_label(const Operator& op) {
  if (op.alice.empty() && op.bob.empty()) return "1";
  return word_string('A', op.alice) + word_string('B', op.bob);
}

LinearForm constant_form(double v) { return LinearForm{v, {}}; }

LinearForm variable_form(int i) { return LinearForm{0.0, {{i, 1.0}}}; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(const Monomial& m) {
  if (m.alice.empty() && m.bob.empty()) return "1";
  return word_string('A', m.alice) + word_string('B', m.bob);
}

LinearForm probability_form(const MomentProblem& mp, int a, int b, int x, int y) {
  const Scenario& sc = mp.scenario;
  if (a < 0 || a >= sc.d || b < 0 || b >= sc.d || x < 0 || x >= sc.k || y < 0 ||
      y >= sc.k) {
    throw std::out_of_range("probability index outside " + to_string(sc));
  }
  // Last outcome eliminated: E_{d-1|x} = 1 - sum of the others.
  auto expand = [&](int outcome, int input) {
    std::vector<std::pair<double, Word>> terms;
    if (outcome + 1 < sc.d) {
      terms.push_back({1.0, {{input, outcome}}});
    } else {
      terms.push_back({1.0, {}});
      for (int o = 0; o + 1 < sc.d; ++o) terms.push_back({-1.0, {{input, o}}});
    }
    return terms;
  };
  LinearForm f;
  for (const auto& [ca, wa] : expand(a, x)) {
    for (const auto& [cb, wb] : expand(b, y)) {
      const Monomial m = canonical({wa, wb});
      if (m.alice.empty() && m.bob.empty()) {
        f.constant += ca * cb;
        continue;
      }
      const auto it = std::find(mp.variable_labels.begin(), mp.variable_labels.end(),
                                to_string(m));
      if (it == mp.variable_labels.end()) {
        throw std::logic_error("moment " + to_string(m) + " missing from the relaxation");
      }
      f += LinearForm{0.0, {{static_cast<int>(it - mp.variable_labels.begin()), ca * cb}}};
    }
  }
  return f;
}

MomentProblem build_moment_problem(const ParadoxSpec& spec, NpaLevel level) {
  const Scenario& sc = spec.scenario();
  const std::vector<Operator> ops = operators(sc, level);
  const std::size_t n = ops.size();
  MomentProblem mp{spec.name(), sc, level, {}, {}, {}, {}, {}, {}};
  for (const auto& op : ops) mp.operator_labels.push_back(operator_label(op));
  mp.entries.assign(n, std::vector<LinearForm>(n));

  std::map<Monomial, int> index;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Word wa(ops[i].alice.rbegin(), ops[i].alice.rend());
      wa.insert(wa.end(), ops[j].alice.begin(), ops[j].alice.end());
      Word wb(ops[i].bob.rbegin(), ops[i].bob.rend());
      wb.insert(wb.end(), ops[j].bob.begin(), ops[j].bob.end());
      const auto ra = reduce(wa);
      const auto rb = reduce(wb);
      LinearForm f;
      if (!ra || !rb) {
        f = constant_form(0.0);
      } else if (ra->empty() && rb->empty()) {
        f = constant_form(1.0);
      } else {
        const Monomial m = canonical({*ra, *rb});
        auto [it, inserted] = index.try_emplace(m, static_cast<int>(index.size()));
        if (inserted) mp.variable_labels.push_back(to_string(m));
        f = variable_form(it->second);
      }
      mp.entries[i][j] = f;
      mp.entries[j][i] = f;
    }
  }

  auto event_form = [&](const Event& e) {
    LinearForm f;
    for (const auto& [a, b] : e.pairs()) f += probability_form(mp, a, b, e.x(), e.y());
    return f;
  };
  mp.objective = event_form(spec.success());
  for (const auto& e : spec.penalties()) {
    LinearForm neg = event_form(e);
    neg *= -1.0;
    mp.objective += neg;
  }
  mp.objective.constant -= spec.epsilon_offset();

  for (const auto& c : spec.constraints()) {
    LinearForm f = event_form(c.event);
    if (c.exactly_zero()) {
      mp.equalities.push_back(std::move(f));
    } else {
      f *= -1.0;
      f.constant += *c.epsilon;
      mp.inequalities.push_back(std::move(f));
    }
  }
  for (int a = 0; a < sc.d; ++a)
    for (int b = 0; b < sc.d; ++b)
      for (int x = 0; x < sc.k; ++x)
        for (int y = 0; y < sc.k; ++y)
          mp.inequalities.push_back(probability_form(mp, a, b, x, y));
  return mp;
}

Eigen::VectorXd evaluate_moments(const MomentProblem& mp, const QuantumStrategy& qs) {
  if (!(qs.scenario() == mp.scenario)) {
    throw std::invalid_argument("strategy scenario does not match the relaxation");
  }
  const Eigen::MatrixXcd psi = qs.state_matrix();
  const int dim = qs.local_dim();
  auto word_operator = [&](const Word& w, const std::vector<ProjectiveMeasurement>& meas) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& p : w) op = op * meas[p.input].projector(p.outcome);
    return op;
  };
  Eigen::VectorXd y(mp.num_variables());
  for (int i = 0; i < mp.num_variables(); ++i) {
    const Monomial m = parse_monomial(mp.variable_labels[i]);
    const Eigen::MatrixXcd xa = word_operator(m.alice, qs.measurements_A());
    const Eigen::MatrixXcd xb = word_operator(m.bob, qs.measurements_B());
    // <psi| X (x) Y |psi> with psi(i, j) the coefficient of |i>|j>.
    y(i) = (psi.conjugate().cwiseProduct(xa * psi * xb.transpose())).sum().real();
  }
  return y;
}

Eigen::MatrixXd moment_matrix(const MomentProblem& mp, const Eigen::VectorXd& y) {
  const int n = mp.matrix_size();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = mp.entries[i][j].evaluate(y);
  return g;
}

SdpaProblem to_sdpa(const MomentProblem& mp) {
  SdpaProblem p;
  p.comments = {" hardy moment relaxation",
                " spec " + mp.spec_name,
                " scenario " + std::to_string(mp.scenario.k) + " " +
                    std::to_string(mp.scenario.d),
                " level " + to_string(mp.level),
                " objective_constant " + format_double(mp.objective.constant),
                " maximize objective_constant - c.x",
                " equalities " + std::to_string(mp.equalities.size()),
                " inequalities " + std::to_string(mp.inequalities.size())};
  for (int i = 0; i < mp.matrix_size(); ++i)
    p.comments.push_back(" operator " + std::to_string(i + 1) + " " + mp.operator_labels[i]);
  for (int i = 0; i < mp.num_variables(); ++i)
    p.comments.push_back(" variable " + std::to_string(i + 1) + " " + mp.variable_labels[i]);

  p.num_variables = mp.num_variables();
  std::vector<const LinearForm*> rows;
  std::vector<LinearForm> negated;
  negated.reserve(mp.equalities.size());
  for (const auto& e : mp.equalities) {
    negated.push_back(e);
    negated.back() *= -1.0;
  }
  for (std::size_t i = 0; i < mp.equalities.size(); ++i) {
    rows.push_back(&mp.equalities[i]);
    rows.push_back(&negated[i]);
  }
  for (const auto& f : mp.inequalities) rows.push_back(&f);
  p.block_sizes = {mp.matrix_size()};
  if (!rows.empty()) p.block_sizes.push_back(-static_cast<int>(rows.size()));

  p.c.assign(p.num_variables, 0.0);
  for (const auto& [i, v] : mp.objective.coefs) p.c[i] = -v;

  for (int r = 0; r < mp.matrix_size(); ++r) {
    for (int c = r; c < mp.matrix_size(); ++c) {
      const LinearForm& f = mp.entries[r][c];
      if (f.constant != 0.0) p.entries.push_back({0, 1, r + 1, c + 1, -f.constant});
      for (const auto& [i, v] : f.coefs) p.entries.push_back({i + 1, 1, r + 1, c + 1, v});
    }
  }
  for (std::size_t l = 0; l < rows.size(); ++l) {
    const int pos = static_cast<int>(l) + 1;
    if (rows[l]->constant != 0.0) p.entries.push_back({0, 2, pos, pos, -rows[l]->constant});
    for (const auto& [i, v] : rows[l]->coefs) p.entries.push_back({i + 1, 2, pos, pos, v});
  }
  std::sort(p.entries.begin(), p.entries.end());
  return p;
}

void write_sdpa(std::ostream& os, const SdpaProblem& p) {
  for (const auto& c : p.comments) os << '*' << c << '\n';
  os << p.num_variables << '\n' << p.block_sizes.size() << '\n';
  for (std::size_t i = 0; i < p.block_sizes.size(); ++i)
    os << (i ? " " : "") << p.block_sizes[i];
  os << '\n';
  for (std::size_t i = 0; i < p.c.size(); ++i) os << (i ? " " : "") << format_double(p.c[i]);
  os << '\n';
  for (const auto& e : p.entries) {
    os << e.matrix << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' '
       << format_double(e.value) << '\n';
  }
}

SdpaProblem read_sdpa(std::istream& is) {
  SdpaProblem p;
  std::string line;
  std::string body;
  while (std::getline(is, line)) {
    if (!line.empty() && (line[0] == '*' || line[0] == '"')) {
      p.comments.push_back(line.substr(1));
      continue;
    }
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    body += line + '\n';
  }
  std::istringstream in(body);
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("malformed SDPA input: " + what);
  };
  int blocks = 0;
  if (!(in >> p.num_variables) || p.num_variables < 0) fail("variable count");
  if (!(in >> blocks) || blocks < 1) fail("block count");
  p.block_sizes.resize(blocks);
  for (auto& b : p.block_sizes)
    if (!(in >> b) || b == 0) fail("block sizes");
  p.c.resize(p.num_variables);
  for (auto& v : p.c)
    if (!(in >> v)) fail("objective vector");
  SdpaEntry e{};
  while (in >> e.matrix) {
    if (!(in >> e.block >> e.row >> e.col >> e.value)) fail("truncated entry");
    if (e.matrix < 0 || e.matrix > p.num_variables || e.block < 1 || e.block > blocks) {
      fail("entry index out of range");
    }
    const int size = std::abs(p.block_sizes[e.block - 1]);
    if (e.row < 1 || e.col < 1 || e.row > size || e.col > size) fail("entry position");
    if (e.row > e.col) std::swap(e.row, e.col);
    p.entries.push_back(e);
  }
  if (!in.eof()) fail("trailing garbage");
  return p;
}

MomentProblem from_sdpa(const SdpaProblem& p) {
  std::map<std::string, std::string> meta;
  std::vector<std::string> op_labels, var_labels;
  for (const auto& c : p.comments) {
    std::istringstream in(c);
    std::string key;
    in >> key;
    std::string rest;
    std::getline(in >> std::ws, rest);
    if (key == "operator" || key == "variable") {
      std::istringstream r(rest);
      std::size_t idx = 0;
      std::string label;
      r >> idx >> label;
      auto& list = key == "operator" ? op_labels : var_labels;
      if (idx != list.size() + 1) throw std::invalid_argument("SDPA metadata out of order");
      list.push_back(label);
    } else {
      meta[key] = rest;
    }
  }
  for (const char* key : {"spec", "scenario", "level", "objective_constant", "equalities",
                          "inequalities"}) {
    if (!meta.count(key)) {
      throw std::invalid_argument(std::string("SDPA file lacks the '") + key +
                                  "' metadata comment");
    }
  }
  int k = 0, d = 0;
  std::istringstream(meta["scenario"]) >> k >> d;
  MomentProblem mp{meta["spec"], Scenario(k, d), parse_npa_level(meta["level"]),
                   op_labels, var_labels, {}, {}, {}, {}};
  const std::size_t n = op_labels.size();
  if (p.block_sizes.empty() || p.block_sizes[0] != static_cast<int>(n) ||
      p.num_variables != static_cast<int>(var_labels.size())) {
    throw std::invalid_argument("SDPA block structure disagrees with its metadata");
  }
  const std::size_t n_eq = std::stoul(meta["equalities"]);
  const std::size_t n_ineq = std::stoul(meta["inequalities"]);
  const std::size_t n_rows = 2 * n_eq + n_ineq;
  if (n_rows > 0 && (p.block_sizes.size() != 2 ||
                     p.block_sizes[1] != -static_cast<int>(n_rows))) {
    throw std::invalid_argument("SDPA diagonal block disagrees with its metadata");
  }

  mp.entries.assign(n, std::vector<LinearForm>(n));
  std::vector<LinearForm> rows(n_rows);
  for (const auto& e : p.entries) {
    LinearForm term = e.matrix == 0 ? LinearForm{-e.value, {}}
                                    : LinearForm{0.0, {{e.matrix - 1, e.value}}};
    if (e.block == 1) {
      mp.entries[e.row - 1][e.col - 1] += term;
      if (e.row != e.col) mp.entries[e.col - 1][e.row - 1] += term;
    } else {
      if (e.row != e.col) throw std::invalid_argument("off-diagonal entry in an LP block");
      rows[e.row - 1] += term;
    }
  }
  mp.objective.constant = std::stod(meta["objective_constant"]);
  for (int i = 0; i < p.num_variables; ++i)
    if (p.c[i] != 0.0) mp.objective.coefs[i] = -p.c[i];
  for (std::size_t i = 0; i < n_eq; ++i) mp.equalities.push_back(rows[2 * i]);
  for (std::size_t i = 0; i < n_ineq; ++i) mp.inequalities.push_back(rows[2 * n_eq + i]);
  return mp;
}

void export_sdpa(const MomentProblem& mp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_sdpa(out, to_sdpa(mp));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace hardy
