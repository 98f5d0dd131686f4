#include "l1sec/expanders.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "l1sec/algebra.hpp"
#include "l1sec/errors.hpp"
#include "l1sec/kernels.hpp"

namespace l1sec {

void Graph::validate() const {
  if (adj.size() != vertices) throw std::logic_error("graph: adjacency size");
  for (Vertex v = 0; v < vertices; ++v) {
    const auto& a = adj[v];
    if (a.size() != degree)
      throw std::logic_error("graph: vertex " + std::to_string(v) +
                             " has degree " + std::to_string(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= vertices || a[i] == v)
        throw std::logic_error("graph: bad neighbor of " + std::to_string(v));
      if (i > 0 && a[i] <= a[i - 1])
        throw std::logic_error("graph: unsorted or repeated neighbor");
      if (!std::binary_search(adj[a[i]].begin(), adj[a[i]].end(), v))
        throw std::logic_error("graph: asymmetric adjacency");
    }
  }
}

Graph cycle_graph(std::uint32_t n) {
  if (n < 3) throw ParameterError("cycle needs at least 3 vertices");
  Graph g{n, 2, std::vector<std::vector<Vertex>>(n)};
  for (Vertex v = 0; v < n; ++v) {
    g.adj[v] = {(v + n - 1) % n, (v + 1) % n};
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }
  return g;
}

std::vector<std::uint32_t> BipartiteAdjacency::left_degrees() const {
  std::vector<std::uint32_t> deg(N, 0);
  for (const auto& nb : right_adj)
    for (Vertex v : nb) ++deg.at(v);
  return deg;
}

BipartiteGraph::BipartiteGraph(std::uint32_t N_, std::uint32_t D_,
                               std::vector<std::vector<Vertex>> adj)
    : N(N_),
      n(static_cast<std::uint32_t>(adj.size())),
      D(D_),
      d(adj.empty() ? 0 : static_cast<std::uint32_t>(adj.front().size())),
      right_adj(std::move(adj)) {
  validate();
}

void BipartiteGraph::validate() const {
  if (right_adj.size() != n) throw std::logic_error("bipartite: n mismatch");
  std::vector<std::uint32_t> deg(N, 0);
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto& nb = right_adj[j];
    if (nb.size() != d)
      throw std::logic_error("bipartite: right vertex " + std::to_string(j) +
                             " has degree " + std::to_string(nb.size()) +
                             ", expected " + std::to_string(d));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= N) throw std::logic_error("bipartite: left index out of range");
      if (i > 0 && nb[i] <= nb[i - 1])
        throw std::logic_error("bipartite: neighborhood not strictly ascending");
      ++deg[nb[i]];
    }
  }
  for (std::uint32_t v = 0; v < N; ++v)
    if (deg[v] > D)
      throw std::logic_error("bipartite: left vertex " + std::to_string(v) +
                             " exceeds degree " + std::to_string(D));
}

std::vector<std::uint32_t> BipartiteGraph::left_degrees() const {
  std::vector<std::uint32_t> deg(N, 0);
  for (const auto& nb : right_adj)
    for (Vertex v : nb) ++deg[v];
  return deg;
}

std::vector<std::vector<Vertex>> BipartiteGraph::left_adj() const {
  std::vector<std::vector<Vertex>> out(N);
  for (std::uint32_t j = 0; j < n; ++j)
    for (Vertex v : right_adj[j]) out[v].push_back(j);
  return out;
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "GRAPH " << g.N << ' ' << g.n << ' ' << g.D << ' ' << g.d << '\n';
  for (const auto& nb : g.right_adj) {
    for (std::size_t i = 0; i < nb.size(); ++i) out << (i ? " " : "") << nb[i];
    out << '\n';
  }
}

std::string to_graph_string(const BipartiteGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

namespace {

std::uint32_t parse_u32(const std::string& tok, std::size_t line,
                        const std::string& field) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "field '" + field + "' is not a nonnegative integer: '" +
                               tok + "'");
  unsigned long long v = 0;
  try {
    v = std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, "field '" + field + "' out of range");
  }
  if (v > UINT32_MAX) throw ParseError(line, "field '" + field + "' out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

BipartiteGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing GRAPH header");
  std::istringstream hs(line);
  std::string magic, f[4];
  hs >> magic;
  if (magic != "GRAPH") throw ParseError(1, "field 'GRAPH': bad magic '" + magic + "'");
  const char* names[4] = {"N", "n", "D", "d"};
  std::uint32_t h[4];
  for (int i = 0; i < 4; ++i) {
    if (!(hs >> f[i])) throw ParseError(1, std::string("missing field '") + names[i] + "'");
    h[i] = parse_u32(f[i], 1, names[i]);
  }
  std::string extra;
  if (hs >> extra) throw ParseError(1, "trailing text in header");

  std::vector<std::vector<Vertex>> adj(h[1]);
  for (std::uint32_t j = 0; j < h[1]; ++j) {
    const std::size_t ln = j + 2;
    if (!std::getline(in, line)) throw ParseError(ln, "missing neighborhood line");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) adj[j].push_back(parse_u32(tok, ln, "neighbor"));
    if (adj[j].size() != h[3])
      throw ParseError(ln, "expected " + std::to_string(h[3]) + " neighbors, got " +
                               std::to_string(adj[j].size()));
    for (std::size_t i = 0; i < adj[j].size(); ++i) {
      if (adj[j][i] >= h[0]) throw ParseError(ln, "neighbor out of range");
      if (i && adj[j][i] <= adj[j][i - 1])
        throw ParseError(ln, "neighbors not strictly ascending");
    }
  }
  while (std::getline(in, line))
    if (!line.empty()) throw ParseError(h[1] + 2, "unexpected trailing content");
  try {
    BipartiteGraph g(h[0], h[2], std::move(adj));
    if (h[1] == 0 && h[3] != 0) throw std::logic_error("d without right vertices");
    return g;
  } catch (const std::logic_error& e) {
    throw ParseError(1, e.what());
  }
}

BipartiteAdjacency delete_left_vertices(const BipartiteAdjacency& H,
                                        std::uint32_t keep) {
  if (keep > H.N) throw std::invalid_argument("cannot keep more vertices than exist");
  BipartiteAdjacency out{keep, {}};
  out.right_adj.reserve(H.right_adj.size());
  for (const auto& nb : H.right_adj) {
    std::vector<Vertex> kept;
    for (Vertex v : nb)
      if (v < keep) kept.push_back(v);
    out.right_adj.push_back(std::move(kept));
  }
  return out;
}

BipartiteGraph right_regularize(const BipartiteAdjacency& H, RegularizeStats* stats) {
  if (H.right_adj.empty()) throw ParameterError("right_regularize: no right vertices");
  const auto deg = H.left_degrees();
  if (deg.empty()) throw ParameterError("right_regularize: no left vertices");
  const std::uint32_t D = deg.front();
  if (D == 0 || std::any_of(deg.begin(), deg.end(), [&](auto x) { return x != D; }))
    throw ParameterError("right_regularize: input is not left-regular");

  const std::uint64_t n = H.right_adj.size();
  const auto d = static_cast<std::uint32_t>((std::uint64_t{H.N} * D + n - 1) / n);

  // Filler candidates ordered by (edges added so far, index).
  std::set<std::pair<std::uint32_t, Vertex>> pool;
  std::vector<std::uint32_t> added(H.N, 0);
  for (Vertex v = 0; v < H.N; ++v) pool.emplace(0, v);

  RegularizeStats st;
  std::vector<std::vector<Vertex>> out;
  for (const auto& raw : H.right_adj) {
    std::vector<Vertex> nb = raw;
    std::sort(nb.begin(), nb.end());
    const std::size_t full = nb.size() / d;
    const std::size_t rem = nb.size() % d;
    for (std::size_t c = 0; c < full; ++c)
      out.emplace_back(nb.begin() + c * d, nb.begin() + (c + 1) * d);
    st.clones += static_cast<std::uint32_t>(full);
    if (rem == 0) continue;

    std::vector<Vertex> clone(nb.end() - rem, nb.end());
    std::vector<std::pair<std::uint32_t, Vertex>> picked;
    for (auto it = pool.begin(); it != pool.end() && clone.size() + picked.size() < d;
         ++it)
      if (!std::binary_search(clone.begin(), clone.end(), it->second))
        picked.push_back(*it);
    if (clone.size() + picked.size() < d)
      throw std::logic_error("right_regularize: not enough filler candidates");
    for (const auto& key : picked) {
      pool.erase(key);
      pool.emplace(key.first + 1, key.second);
      ++added[key.second];
      clone.push_back(key.second);
    }
    std::sort(clone.begin(), clone.end());
    st.filler_edges += picked.size();
    ++st.clones;
    out.push_back(std::move(clone));
  }
  if (stats) *stats = st;
  return BipartiteGraph(H.N, 2 * D, std::move(out));
}

BipartiteAdjacency edge_vertex_incidence_raw(const Graph& Y) {
  BipartiteAdjacency H;
  H.right_adj.resize(Y.vertices);
  std::uint32_t e = 0;
  for (Vertex u = 0; u < Y.vertices; ++u)
    for (Vertex v : Y.adj[u])
      if (v > u) {
        H.right_adj[u].push_back(e);
        H.right_adj[v].push_back(e);
        ++e;
      }
  H.N = e;
  return H;
}

BipartiteGraph edge_vertex_incidence(const Graph& Y) {
  Y.validate();
  auto H = edge_vertex_incidence_raw(Y);
  return BipartiteGraph(H.N, 2, std::move(H.right_adj));
}

bool alon_chung_check(const Graph& Y, double lambda2,
                      const std::vector<Vertex>& subset) {
  std::vector<char> in(Y.vertices, 0);
  for (Vertex v : subset) in.at(v) = 1;
  std::uint64_t size = 0, inside = 0;
  for (Vertex v = 0; v < Y.vertices; ++v) {
    if (!in[v]) continue;
    ++size;
    for (Vertex w : Y.adj[v]) inside += (in[w] && w > v);
  }
  const double n = Y.vertices;
  const double dy = Y.degree;
  const double gamma = static_cast<double>(size) / n;
  const double bound = (gamma * gamma + gamma * lambda2 / dy) * dy * n / 2.0;
  return static_cast<double>(inside) <= bound + 1e-9;
}

// ------------------------------------------------------------ profiles

const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::spectral: return "spectral";
    case ProfileKind::sumproduct: return "sumproduct";
    case ProfileKind::trivial: return "trivial";
    case ProfileKind::bruteforce: return "bruteforce";
  }
  return "?";
}

double ProfileBound::evaluate(double m) const {
  if (m <= 0) return 0.0;
  const double s = std::ceil(m - 1e-12);
  if (s > N) return n;
  double v = 0.0;
  if (d > 0 && min_left_degree > 0)
    v = std::max<double>(min_left_degree, std::ceil(s * min_left_degree / d - 1e-9));
  switch (kind) {
    case ProfileKind::trivial:
      break;
    case ProfileKind::spectral:
      v = std::max(v, std::min(std::sqrt(s * y_vertices / y_degree), s / y_lambda));
      break;
    case ProfileKind::sumproduct: {
      double w = std::cbrt(s);
      if (xi0 && *xi0 > 0)
        w = std::max(w, std::min(std::pow(static_cast<double>(n), 0.9) / 8.0,
                                 std::pow(s, 1.0 / 3.0 + *xi0)));
      v = std::max(v, w);
      break;
    }
    case ProfileKind::bruteforce:
      v = std::max<double>(v, table.at(static_cast<std::size_t>(s)));
      break;
  }
  return std::min<double>(n, std::ceil(v - 1e-9));
}

Provenance ProfileBound::provenance() const {
  if (kind == ProfileKind::bruteforce) return Provenance::exact_oracle;
  if (kind == ProfileKind::sumproduct && xi0 && *xi0 > 0)
    return Provenance::assumed_constant;
  return Provenance::proved_arithmetic;
}

std::string ProfileBound::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " profile (N=" << N << " n=" << n << " d=" << d << ")";
  if (kind == ProfileKind::spectral)
    os << ": Alon-Chung on |V|=" << y_vertices << " deg=" << y_degree
       << " lambda<=" << y_lambda;
  if (kind == ProfileKind::sumproduct)
    os << ": m^(1/3)" << (xi0 && *xi0 > 0 ? " with assumed xi0=" + std::to_string(*xi0)
                                          : std::string());
  return os.str();
}

namespace {

std::uint32_t min_degree(const BipartiteGraph& g) {
  const auto deg = g.left_degrees();
  return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

}  // namespace

ProfileBound trivial_profile(const BipartiteGraph& g) {
  ProfileBound b;
  b.kind = ProfileKind::trivial;
  b.N = g.N;
  b.n = g.n;
  b.d = g.d;
  b.min_left_degree = min_degree(g);
  return b;
}

ProfileBound bruteforce_profile(const BipartiteGraph& g, std::uint32_t max_left) {
  if (g.N > max_left)
    throw GuardError("brute-force profile refused: N=" + std::to_string(g.N) +
                     " exceeds guard " + std::to_string(max_left));
  ProfileBound b = trivial_profile(g);
  b.kind = ProfileKind::bruteforce;
  b.table = kernels::profile_table_omp(g);
  return b;
}

std::uint32_t profile_bruteforce(const BipartiteGraph& g, double m,
                                 std::uint32_t max_left) {
  const ProfileBound b = bruteforce_profile(g, max_left);
  if (m <= 0) return 0;
  const double s = std::ceil(m - 1e-12);
  if (s > g.N) return g.n;
  return b.table[static_cast<std::size_t>(s)];
}

// ------------------------------------------------------------ builders

Expander build_spectral_expander(std::uint64_t N, std::uint64_t d,
                                 std::uint64_t max_lps_vertices) {
  const PrimePair pq = find_prime_pq(d, N);
  const std::uint64_t q = pq.q;
  const std::uint64_t group = q * (q * q - 1);
  const std::uint64_t vertices =
      legendre_symbol(static_cast<std::int64_t>(pq.p), static_cast<std::int64_t>(q)) == 1
          ? group / 2
          : group;
  if (max_lps_vertices && vertices > max_lps_vertices)
    throw ParameterError("LPS(" + std::to_string(pq.p) + "," + std::to_string(q) +
                         ") has " + std::to_string(vertices) +
                         " vertices, above the cap " + std::to_string(max_lps_vertices));
  const LpsGraph lps = build_lps(pq.p, q);
  const auto raw = edge_vertex_incidence_raw(lps.graph);
  if (raw.N < N)
    throw ParameterError("LPS incidence graph has only " + std::to_string(raw.N) +
                         " edges, need " + std::to_string(N));
  RegularizeStats st;
  BipartiteGraph g =
      right_regularize(delete_left_vertices(raw, static_cast<std::uint32_t>(N)), &st);

  ProfileBound b = trivial_profile(g);
  b.kind = ProfileKind::spectral;
  b.min_left_degree = 2;
  b.y_vertices = static_cast<double>(lps.graph.vertices);
  b.y_degree = static_cast<double>(pq.p + 1);
  b.y_lambda = 2.0 * std::sqrt(static_cast<double>(pq.p));
  std::string label = "lps(p=" + std::to_string(pq.p) + ",q=" + std::to_string(q) +
                      ") incidence N=" + std::to_string(N) + " n=" +
                      std::to_string(g.n) + " d=" + std::to_string(g.d);
  return {std::move(g), std::move(b), std::move(label)};
}

BipartiteAdjacency sum_product_raw(std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("sum-product graph needs a prime p");
  if (p * p * p > UINT32_MAX) throw GuardError("sum-product graph too large");
  const auto P = static_cast<std::uint32_t>(p);
  BipartiteAdjacency H{P * P * P, std::vector<std::vector<Vertex>>(4 * P)};
  for (std::uint32_t a = 0; a < P; ++a)
    for (std::uint32_t b = 0; b < P; ++b)
      for (std::uint32_t c = 0; c < P; ++c) {
        const Vertex v = (a * P + b) * P + c;
        H.right_adj[0 * P + a].push_back(v);
        H.right_adj[1 * P + b].push_back(v);
        H.right_adj[2 * P + c].push_back(v);
        H.right_adj[3 * P + (a * b + c) % P].push_back(v);
      }
  return H;
}

Expander build_sum_product(std::uint64_t N, std::optional<double> xi0) {
  if (N < 8) throw ParameterError("sum-product construction needs N >= 8");
  const std::uint64_t p = smallest_prime_cube_at_least(N);
  const auto raw = sum_product_raw(p);
  BipartiteGraph g =
      right_regularize(delete_left_vertices(raw, static_cast<std::uint32_t>(N)));
  ProfileBound b = trivial_profile(g);
  b.kind = ProfileKind::sumproduct;
  b.min_left_degree = 4;
  b.xi0 = xi0;
  std::string label = "sum-product(p=" + std::to_string(p) + ") N=" + std::to_string(N) +
                      " n=" + std::to_string(g.n) + " d=" + std::to_string(g.d);
  return {std::move(g), std::move(b), std::move(label)};
}

}  // namespace l1sec
