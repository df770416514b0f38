#include "hierpart/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hierpart/errors.hpp"

namespace hierpart::io {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view what) : in_(in), what_(what) {}

  /// Next non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() == '%') continue;
      return true;
    }
    return false;
  }

  std::string require(std::string_view expecting) {
    std::string line;
    if (!next(line)) fail("unexpected end of file, expected " + std::string(expecting));
    return line;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError(std::string(what_) + ": " + msg, line_no_);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string_view what_;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> tokens(std::string&&) = delete;

std::vector<std::string_view> tokens(const std::string& owned) {
  const std::string_view line = owned;
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, const LineReader& reader) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    reader.fail("cannot parse '" + std::string(tok) + "' as a number");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<PartId> read_ids(std::istream& in, std::string_view what) {
  LineReader reader(in, what);
  std::vector<PartId> ids;
  std::string line;
  while (reader.next(line)) {
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 1) reader.fail("expected exactly one id per line");
    const auto id = parse_number<PartId>(tok[0], reader);
    if (id < 0) reader.fail("ids must be non-negative");
    ids.push_back(id);
  }
  return ids;
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  LineReader reader(in, "mesh");
  const std::string header_line = reader.require("header");
  auto header = tokens(header_line);
  if (header.size() != 3) reader.fail("header must be 'dim num_nodes num_elements'");
  const int dim = parse_number<int>(header[0], reader);
  const auto nn = parse_number<std::int64_t>(header[1], reader);
  const auto ne = parse_number<std::int64_t>(header[2], reader);
  if (dim != 2 && dim != 3) reader.fail("dimension must be 2 or 3");
  if (nn < 0 || ne < 0) reader.fail("counts must be non-negative");
  const int npe = dim == 2 ? 4 : 8;

  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(nn * dim));
  for (std::int64_t n = 0; n < nn; ++n) {
    const std::string tok_line = reader.require("node coordinates");
    auto tok = tokens(tok_line);
    if (static_cast<int>(tok.size()) != dim) reader.fail("expected " + std::to_string(dim) + " coordinates");
    for (auto t : tok) coords.push_back(parse_number<double>(t, reader));
  }
  std::vector<NodeId> conn;
  conn.reserve(static_cast<std::size_t>(ne * npe));
  for (std::int64_t e = 0; e < ne; ++e) {
    const std::string tok_line = reader.require("element connectivity");
    auto tok = tokens(tok_line);
    if (static_cast<int>(tok.size()) != npe) reader.fail("expected " + std::to_string(npe) + " node ids");
    for (auto t : tok) {
      const auto id = parse_number<NodeId>(t, reader);
      if (id < 0 || id >= nn) reader.fail("node id " + std::string(t) + " out of range");
      conn.push_back(id);
    }
  }
  try {
    return Mesh::create(dim, std::move(coords), std::move(conn));
  } catch (const InvalidArgument& e) {
    reader.fail(e.what());
  }
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.dim() << ' ' << mesh.num_nodes() << ' ' << mesh.num_elements() << '\n';
  for (NodeId n = 0; n < mesh.num_nodes(); ++n) {
    auto c = mesh.coords(n);
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << format_double(c[k]);
    out << '\n';
  }
  for (ElementId e = 0; e < mesh.num_elements(); ++e) {
    auto nodes = mesh.element(e);
    for (std::size_t k = 0; k < nodes.size(); ++k) out << (k ? " " : "") << nodes[k];
    out << '\n';
  }
}

Graph read_graph(std::istream& in) {
  LineReader reader(in, "graph");
  const std::string header_line = reader.require("header");
  auto header = tokens(header_line);
  if (header.size() < 2 || header.size() > 4) reader.fail("header must be 'nv ne [fmt [ncon]]'");
  const auto nv = parse_number<VertexId>(header[0], reader);
  const auto ne = parse_number<std::int64_t>(header[1], reader);
  if (nv < 0 || ne < 0) reader.fail("counts must be non-negative");
  bool has_vw = false;
  bool has_ew = false;
  if (header.size() >= 3) {
    std::string fmt(header[2]);
    if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string::npos) reader.fail("unsupported fmt " + fmt);
    fmt.insert(0, 3 - fmt.size(), '0');
    if (fmt[0] == '1') reader.fail("vertex sizes are not supported");
    has_vw = fmt[1] == '1';
    has_ew = fmt[2] == '1';
  }
  if (header.size() == 4 && parse_number<int>(header[3], reader) != 1)
    reader.fail("only one vertex constraint is supported");

  std::vector<std::int64_t> offsets{0};
  std::vector<VertexId> adjacency;
  std::vector<Weight> edge_weights;
  std::vector<Weight> vertex_weights;
  for (VertexId v = 0; v < nv; ++v) {
    const std::string tok_line = reader.require("adjacency of vertex " + std::to_string(v + 1));
    auto tok = tokens(tok_line);
    std::size_t i = 0;
    Weight vw = 1;
    if (has_vw) {
      if (tok.empty()) reader.fail("missing vertex weight");
      vw = parse_number<Weight>(tok[i++], reader);
    }
    const std::size_t stride = has_ew ? 2 : 1;
    if ((tok.size() - i) % stride != 0) reader.fail("neighbor without weight");
    std::vector<std::pair<VertexId, Weight>> row;
    for (; i < tok.size(); i += stride) {
      const auto u = parse_number<VertexId>(tok[i], reader);
      if (u < 1 || u > nv) reader.fail("neighbor " + std::string(tok[i]) + " out of range [1, nv]");
      row.emplace_back(u - 1, has_ew ? parse_number<Weight>(tok[i + 1], reader) : 1);
    }
    std::sort(row.begin(), row.end());
    for (auto [u, w] : row) {
      adjacency.push_back(u);
      edge_weights.push_back(w);
    }
    offsets.push_back(static_cast<std::int64_t>(adjacency.size()));
    vertex_weights.push_back(vw);
  }
  if (static_cast<std::int64_t>(adjacency.size()) != 2 * ne)
    reader.fail("header declares " + std::to_string(ne) + " edges but adjacency lists hold " +
                std::to_string(adjacency.size()) + " entries");
  try {
    return Graph::from_csr(std::move(offsets), std::move(adjacency), std::move(edge_weights),
                           std::move(vertex_weights));
  } catch (const InvalidArgument& e) {
    reader.fail(e.what());
  }
}

void write_graph(std::ostream& out, const Graph& g) {
  const bool vw = std::any_of(g.vertex_weights().begin(), g.vertex_weights().end(), [](Weight w) { return w != 1; });
  const bool ew = std::any_of(g.edge_weights().begin(), g.edge_weights().end(), [](Weight w) { return w != 1; });
  out << g.num_vertices() << ' ' << g.num_edges();
  if (vw || ew) out << ' ' << (vw ? "1" : "") << (ew ? "1" : (vw ? "0" : ""));
  out << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    bool first = true;
    auto sep = [&] {
      if (!first) out << ' ';
      first = false;
    };
    if (vw) {
      sep();
      out << g.vertex_weight(v);
    }
    auto nbrs = g.neighbors(v);
    auto wts = g.edge_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      sep();
      out << nbrs[k] + 1;
      if (ew) out << ' ' << wts[k];
    }
    out << '\n';
  }
}

Partition read_partition(std::istream& in, std::optional<PartId> num_parts) {
  auto ids = read_ids(in, "partition");
  if (!num_parts) return Partition::from_ids(std::move(ids));
  try {
    return Partition::make(std::move(ids), *num_parts);
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("partition: ") + e.what());
  }
}

void write_partition(std::ostream& out, const Partition& p) {
  for (PartId id : p.parts) out << id << '\n';
}

NodeOwnership read_ownership(std::istream& in, std::optional<PartId> num_ranks) {
  auto owners = read_ids(in, "node ownership");
  PartId ranks = 1;
  for (PartId o : owners) ranks = std::max(ranks, o + 1);
  if (num_ranks) {
    if (ranks > *num_ranks) throw IoError("node ownership: owner id exceeds the rank count");
    ranks = *num_ranks;
  }
  return NodeOwnership::from_owners(std::move(owners), ranks);
}

void write_ownership(std::ostream& out, const NodeOwnership& ownership) {
  for (PartId o : ownership.owner) out << o << '\n';
}

Mesh load_mesh(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_mesh(in);
}

Graph load_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_graph(in);
}

Partition load_partition(const std::filesystem::path& path, std::optional<PartId> num_parts) {
  auto in = open_in(path);
  return read_partition(in, num_parts);
}

NodeOwnership load_ownership(const std::filesystem::path& path, std::optional<PartId> num_ranks) {
  auto in = open_in(path);
  return read_ownership(in, num_ranks);
}

void save_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  write_file(path, [&](std::ostream& out) { write_mesh(out, mesh); });
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
  write_file(path, [&](std::ostream& out) { write_graph(out, g); });
}

void save_partition(const std::filesystem::path& path, const Partition& p) {
  write_file(path, [&](std::ostream& out) { write_partition(out, p); });
}

void save_ownership(const std::filesystem::path& path, const NodeOwnership& ownership) {
  write_file(path, [&](std::ostream& out) { write_ownership(out, ownership); });
}

}  // namespace hierpart::io
