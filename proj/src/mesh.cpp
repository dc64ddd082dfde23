#include "abem/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "abem/errors.hpp"

namespace abem {

namespace {
constexpr double kNodeMatchTol = 1e-12;
}

Mesh::Mesh(std::shared_ptr<const Curve> curve, std::vector<double> node_s,
           std::vector<int> generations)
    : curve_(std::move(curve)), node_s_(std::move(node_s)), generation_(std::move(generations)) {
  const bool closed = curve_->closed();
  const std::size_t n_elem = closed ? node_s_.size() : node_s_.size() - 1;
  if (generation_.size() != n_elem)
    throw std::invalid_argument("generation count does not match element count");
  if (node_s_.empty() || node_s_.front() != 0.0)
    throw std::invalid_argument("first node must sit at arclength 0");
  if (!closed && std::abs(node_s_.back() - curve_->length()) > kNodeMatchTol * curve_->length())
    throw std::invalid_argument("last node of an open mesh must sit at the curve end");

  elem_edge_.resize(n_elem);
  for (std::size_t e = 0; e < n_elem; ++e) {
    const double sb = element_begin(e);
    const double se = element_end(e);
    if (!(se > sb)) throw std::invalid_argument("element with non-positive length");
    const std::size_t edge = curve_->edge_of(0.5 * (sb + se));
    const double eb = curve_->edge_begin(edge);
    const double ee = eb + curve_->edge_length(edge);
    const double tol = kNodeMatchTol * std::max(1.0, curve_->length());
    if (sb < eb - tol || se > ee + tol)
      throw std::invalid_argument("element crosses a curve vertex");
    elem_edge_[e] = edge;
  }

  node_corner_.assign(node_s_.size(), false);
  const double tol = kNodeMatchTol * std::max(1.0, curve_->length());
  for (std::size_t z = 0; z < node_s_.size(); ++z) {
    for (std::size_t v : curve_->corner_vertices()) {
      const double sv = (v < curve_->n_edges()) ? curve_->edge_begin(v) : curve_->length();
      if (std::abs(node_s_[z] - sv) < tol) {
        node_corner_[z] = true;
        break;
      }
    }
  }
}

double Mesh::element_end(std::size_t e) const {
  if (curve_->closed() && e + 1 == n_elements()) return curve_->length();
  return node_s_[e + 1];
}

Point2 Mesh::node_point(std::size_t z) const { return curve_->point_at(node_s_[z]); }

bool Mesh::is_tip_node(std::size_t z) const {
  return !curve_->closed() && (z == 0 || z + 1 == n_nodes());
}

Point2 Mesh::element_point_end(std::size_t e) const { return curve_->point_at(element_end(e)); }

std::vector<std::size_t> Mesh::neighbors(std::size_t e) const {
  const std::size_t n = n_elements();
  std::vector<std::size_t> out;
  if (curve_->closed()) {
    if (n > 1) out.push_back((e + n - 1) % n);
    if (n > 2) out.push_back((e + 1) % n);
    else if (n == 2) {}  // single neighbor already listed
  } else {
    if (e > 0) out.push_back(e - 1);
    if (e + 1 < n) out.push_back(e + 1);
  }
  return out;
}

Patch Mesh::element_patch(std::size_t e) const {
  Patch p{e, {}};
  auto nb = neighbors(e);
  p.members.push_back(e);
  for (auto m : nb) p.members.push_back(m);
  std::sort(p.members.begin(), p.members.end());
  p.members.erase(std::unique(p.members.begin(), p.members.end()), p.members.end());
  return p;
}

std::vector<std::size_t> Mesh::node_elements(std::size_t z) const {
  const std::size_t n = n_elements();
  std::vector<std::size_t> out;
  if (curve_->closed()) {
    out.push_back((z + n - 1) % n);
    out.push_back(z % n);
  } else {
    if (z > 0) out.push_back(z - 1);
    if (z < n) out.push_back(z);
  }
  return out;
}

Patch Mesh::node_patch(std::size_t z) const { return Patch{z, node_elements(z)}; }

double Mesh::mesh_ratio() const {
  double kappa = 1.0;
  for (std::size_t e = 0; e < n_elements(); ++e) {
    for (std::size_t m : neighbors(e)) {
      const double r = element_length(e) / element_length(m);
      kappa = std::max(kappa, std::max(r, 1.0 / r));
    }
  }
  return kappa;
}

double Mesh::max_element_length() const {
  double h = 0.0;
  for (std::size_t e = 0; e < n_elements(); ++e) h = std::max(h, element_length(e));
  return h;
}

bool Mesh::components_have_two_elements() const {
  const std::size_t n = n_elements();
  if (curve_->closed()) {
    std::vector<std::size_t> breaks;
    for (std::size_t z = 0; z < n_nodes(); ++z)
      if (node_corner_[z]) breaks.push_back(z);
    if (breaks.empty()) return n >= 2;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      const std::size_t b = breaks[i];
      const std::size_t next = breaks[(i + 1) % breaks.size()];
      const std::size_t count = (next + n - b) % n;
      if ((count == 0 ? n : count) < 2) return false;
    }
    return true;
  }
  std::size_t run = 0;
  for (std::size_t e = 0; e < n; ++e) {
    ++run;
    const bool end_break = (e + 1 == n) || node_corner_[e + 1];
    if (end_break) {
      if (run < 2) return false;
      run = 0;
    }
  }
  return true;
}

void Mesh::save(std::ostream& os) const {
  char buf[64];
  os << (curve_->closed() ? "closed " : "open ") << curve_->n_vertices() << "\n";
  for (std::size_t v = 0; v < curve_->n_vertices(); ++v) {
    const Point2 p = curve_->vertices()[v];
    std::snprintf(buf, sizeof buf, "%.17g %.17g", p.x, p.y);
    os << buf;
    if (curve_->is_corner_vertex(v)) os << " corner";
    os << "\n";
  }
  os << "mesh " << n_nodes() << " " << n_elements() << "\n";
  for (double s : node_s_) {
    std::snprintf(buf, sizeof buf, "%.17g", s);
    os << buf << "\n";
  }
  for (std::size_t e = 0; e < n_elements(); ++e)
    os << generation_[e] << (e + 1 == n_elements() ? "\n" : " ");
}

Mesh Mesh::load(std::istream& is) {
  std::string kind;
  std::size_t nv = 0;
  if (!(is >> kind >> nv)) throw std::invalid_argument("bad mesh header");
  const bool closed = kind == "closed";
  if (!closed && kind != "open") throw std::invalid_argument("bad curve kind: " + kind);
  std::vector<Point2> verts(nv);
  std::set<std::size_t> corners;
  std::string rest;
  std::getline(is, rest);
  for (std::size_t v = 0; v < nv; ++v) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("truncated vertex list");
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> verts[v].x >> verts[v].y)) throw std::invalid_argument("bad vertex line");
    if (ls >> tok && tok == "corner") corners.insert(v);
  }
  std::string tag;
  std::size_t nn = 0, ne = 0;
  if (!(is >> tag >> nn >> ne) || tag != "mesh") throw std::invalid_argument("bad mesh section");
  std::vector<double> node_s(nn);
  for (auto& s : node_s)
    if (!(is >> s)) throw std::invalid_argument("truncated node list");
  std::vector<int> gen(ne);
  for (auto& g : gen)
    if (!(is >> g)) throw std::invalid_argument("truncated generation list");
  auto curve = std::make_shared<Curve>(std::move(verts), closed, std::move(corners));
  return Mesh(std::move(curve), std::move(node_s), std::move(gen));
}

Mesh build_mesh(std::shared_ptr<const Curve> curve, const std::vector<std::size_t>& counts,
                bool require_two_per_component) {
  if (counts.size() != curve->n_edges())
    throw std::invalid_argument("one subdivision count per curve edge expected");
  std::vector<double> node_s;
  std::size_t total = 0;
  for (std::size_t e = 0; e < curve->n_edges(); ++e) {
    if (counts[e] == 0) throw std::invalid_argument("subdivision counts must be positive");
    const double sb = curve->edge_begin(e);
    const double len = curve->edge_length(e);
    for (std::size_t i = 0; i < counts[e]; ++i)
      node_s.push_back(sb + (double(i) / double(counts[e])) * len);
    total += counts[e];
  }
  if (!curve->closed()) node_s.push_back(curve->length());
  Mesh mesh(curve, std::move(node_s), std::vector<int>(total, 0));
  if (require_two_per_component && !mesh.components_have_two_elements())
    throw SmoothComponentTooCoarse("a corner-free component holds fewer than 2 elements");
  return mesh;
}

Mesh build_mesh(std::shared_ptr<const Curve> curve, std::size_t elements_per_edge) {
  return build_mesh(curve, std::vector<std::size_t>(curve->n_edges(), elements_per_edge), true);
}

}  // namespace abem
