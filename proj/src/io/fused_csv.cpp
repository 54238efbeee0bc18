#include "engage/io/fused_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace engage::io {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_fused_csv(const std::filesystem::path& path,
                     const std::vector<SyncedFrame>& frames,
                     const FeatureManifest& manifest, const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    out << manifest.at(i).id << ',';
  }
  out << "t,label\n";
  for (const SyncedFrame& frame : frames) {
    if (frame.features.values.size() != manifest.size()) {
      throw std::invalid_argument("frame arity does not match manifest");
    }
    for (double v : frame.features.values) out << format_double(v) << ',';
    out << frame.t << ',' << to_string(frame.label) << '\n';
  }
}

FusedDataset read_fused_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) header.push_back(cell);
    break;
  }
  if (header.size() < 3 || header[header.size() - 2] != "t" || header.back() != "label") {
    throw std::runtime_error(path.string() + ": malformed fused CSV header");
  }
  const std::size_t n_features = header.size() - 2;

  FusedDataset ds;
  ds.edition = n_features == 99 ? Edition::Full99 : Edition::Selected32;
  const FeatureManifest& manifest = FeatureManifest::edition(ds.edition);
  if (manifest.size() != n_features) {
    throw std::runtime_error(path.string() + ": unsupported feature count " +
                             std::to_string(n_features));
  }
  for (std::size_t i = 0; i < n_features; ++i) {
    if (header[i] != manifest.at(i).id) {
      throw std::runtime_error(path.string() + ": header mismatch at column " +
                               std::to_string(i) + " (" + header[i] + ")");
    }
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SyncedFrame frame;
    frame.features.values.reserve(n_features);
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t i = 0; i < n_features; ++i) {
      double v = 0.0;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{} || res.ptr == end || *res.ptr != ',') {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": malformed value");
      }
      frame.features.values.push_back(v);
      p = res.ptr + 1;
    }
    Timestamp t = 0;
    auto res = std::from_chars(p, end, t);
    if (res.ec != std::errc{} || res.ptr == end || *res.ptr != ',') {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed timestamp");
    }
    frame.t = t;
    const std::string label_s(res.ptr + 1, end);
    auto label = label5_from_string(label_s);
    if (!label) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": unknown label " + label_s);
    }
    frame.label = *label;
    // Presence masks are not serialized; mark everything present.
    frame.features.present.fill(true);
    ds.frames.push_back(std::move(frame));
  }
  return ds;
}

}  // namespace engage::io
