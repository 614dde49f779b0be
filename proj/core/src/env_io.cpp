#include "nagplan/env_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "nagplan/errors.hpp"

namespace nagplan {

namespace {

// Whitespace/comment aware tokenizer over a PGM header and body.
class PgmScanner {
 public:
  explicit PgmScanner(std::string_view bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  /// Start of the most recently read token.
  std::size_t token_offset() const noexcept { return token_start_; }

  std::string_view next_token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    token_start_ = start;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      ++pos_;
    }
    return bytes_.substr(start, pos_ - start);
  }

  long next_int(const char* what) {
    skip_space_and_comments();
    const std::size_t at = pos_;
    const auto tok = next_token();
    if (tok.empty()) throw ParseError(std::string("unexpected end of input reading ") + what, at);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(std::string("expected integer for ") + what + ", got '" + std::string(tok) + "'", at);
    }
    return value;
  }

  bool at_end() {
    skip_space_and_comments();
    return pos_ >= bytes_.size();
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
};

std::size_t key_offset(std::string_view text, const char* key) {
  const auto at = text.find(std::string("\"") + key + "\"");
  return at == std::string_view::npos ? 0 : at;
}

}  // namespace

std::string to_string(EnvFormat f) { return f == EnvFormat::kPgm2d ? "pgm-2d" : "voxel-json-3d"; }

std::optional<EnvFormat> env_format_from_string(const std::string& s) {
  if (s == "pgm-2d" || s == "pgm") return EnvFormat::kPgm2d;
  if (s == "voxel-json-3d" || s == "voxel-json") return EnvFormat::kVoxelJson3d;
  return std::nullopt;
}

Environment load_pgm(std::string_view bytes, const LoadOptions& opts) {
  if (opts.topology == Topology::kGrid3d) throw InvalidQuery("PGM input is 2D; use planar2d or cylinder2d");
  PgmScanner in(bytes);
  const std::size_t magic_at = in.offset();
  if (in.next_token() != "P2") throw ParseError("missing P2 magic", magic_at);

  const long width = in.next_int("width");
  if (width <= 0) throw ParseError("width must be positive", in.token_offset());
  const long height = in.next_int("height");
  if (height <= 0) throw ParseError("height must be positive", in.token_offset());
  const long maxval = in.next_int("maxval");
  if (maxval <= 0 || maxval > 65535) throw ParseError("maxval must be in [1, 65535]", in.token_offset());

  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> solid(n, 0);
  std::vector<double> rho(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (in.at_end()) throw ParseError("pixel data ends after " + std::to_string(i) + " of " + std::to_string(n) + " values", in.offset());
    const long gray = in.next_int("pixel");
    if (gray < 0 || gray > maxval) throw ParseError("pixel value out of range [0, maxval]", in.token_offset());
    solid[i] = gray < opts.obstacle_threshold ? 1 : 0;
    rho[i] = 1.0 - static_cast<double>(gray) / static_cast<double>(maxval);
  }
  if (!in.at_end()) throw ParseError("trailing data after pixel block (dimension mismatch)", in.offset());
  return Environment({static_cast<int>(width), static_cast<int>(height), 1}, opts.topology, std::move(solid),
                     std::move(rho), opts.cm);
}

Environment load_voxel_json(std::string_view bytes, const LoadOptions& opts) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("voxel document must be a JSON object", 0);

  const auto dims_it = doc.find("dims");
  if (dims_it == doc.end() || !dims_it->is_array() || dims_it->size() != 3) {
    throw ParseError("'dims' must be an array [nx, ny, nz]", key_offset(bytes, "dims"));
  }
  Dims dims;
  int* slots[3] = {&dims.nx, &dims.ny, &dims.nz};
  for (int k = 0; k < 3; ++k) {
    const auto& v = (*dims_it)[k];
    if (!v.is_number_integer() || v.get<long>() <= 0) {
      throw ParseError("'dims' entries must be positive integers", key_offset(bytes, "dims"));
    }
    *slots[k] = v.get<int>();
  }
  const std::size_t n = static_cast<std::size_t>(dims.nx) * dims.ny * dims.nz;

  const auto solid_it = doc.find("solid");
  if (solid_it == doc.end() || !solid_it->is_array()) {
    throw ParseError("'solid' must be an array", key_offset(bytes, "solid"));
  }
  if (solid_it->size() != n) {
    throw ParseError("'solid' has " + std::to_string(solid_it->size()) + " entries, expected " + std::to_string(n),
                     key_offset(bytes, "solid"));
  }
  std::vector<std::uint8_t> solid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = (*solid_it)[i];
    if (!v.is_number_integer() || (v.get<long>() != 0 && v.get<long>() != 1)) {
      throw ParseError("'solid' entries must be 0 or 1", key_offset(bytes, "solid"));
    }
    solid[i] = static_cast<std::uint8_t>(v.get<long>());
  }

  std::vector<double> rho(n, 0.0);
  if (const auto rho_it = doc.find("rho"); rho_it != doc.end()) {
    if (!rho_it->is_array() || rho_it->size() != n) {
      throw ParseError("'rho' must be an array with one value per voxel", key_offset(bytes, "rho"));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = (*rho_it)[i];
      if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
        throw ParseError("'rho' entries must be numbers in [0, 1]", key_offset(bytes, "rho"));
      }
      rho[i] = v.get<double>();
    }
  }
  return Environment(dims, Topology::kGrid3d, std::move(solid), std::move(rho), opts.cm);
}

Environment load_environment(std::string_view bytes, EnvFormat format, const LoadOptions& opts) {
  return format == EnvFormat::kPgm2d ? load_pgm(bytes, opts) : load_voxel_json(bytes, opts);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nagplan
