#include "edgeprint/pgm.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <string>

#include "edgeprint/errors.hpp"

namespace edgeprint {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  // Skips whitespace and '#' comments. Returns false at end of input.
  bool skip_blank() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        return true;
      }
    }
    return false;
  }

  // Reads a signed decimal integer token. Returns the token start offset.
  long long read_int(PgmErrorCode missing_code, const char* field) {
    if (!skip_blank()) {
      throw PgmParseError(missing_code, pos_,
                          std::string("missing ") + field);
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) &&
           bytes_[pos_] != '#')
      ++pos_;
    const auto* first = reinterpret_cast<const char*>(bytes_.data() + start);
    const auto* last = reinterpret_cast<const char*>(bytes_.data() + pos_);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw PgmParseError(missing_code == PgmErrorCode::Truncated
                              ? PgmErrorCode::BadSample
                              : missing_code,
                          start, std::string("invalid ") + field);
    }
    last_start_ = start;
    return value;
  }

  std::size_t last_start() const { return last_start_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::size_t last_start_ = 0;
};

}  // namespace

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '5' && bytes[1] != '2')) {
    throw PgmParseError(PgmErrorCode::BadMagic, 0,
                        "expected magic number P5 or P2");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader in(bytes);
  in.advance(2);
  if (in.pos() < bytes.size() && !is_space(bytes[in.pos()]) &&
      bytes[in.pos()] != '#') {
    throw PgmParseError(PgmErrorCode::BadMagic, 2,
                        "magic number not followed by whitespace");
  }

  const long long width = in.read_int(PgmErrorCode::BadHeader, "width");
  if (width <= 0 || width > (1 << 24)) {
    throw PgmParseError(PgmErrorCode::BadDimensions, in.last_start(),
                        "width must be positive, got " + std::to_string(width));
  }
  const long long height = in.read_int(PgmErrorCode::BadHeader, "height");
  if (height <= 0 || height > (1 << 24)) {
    throw PgmParseError(PgmErrorCode::BadDimensions, in.last_start(),
                        "height must be positive, got " +
                            std::to_string(height));
  }
  const long long maxval = in.read_int(PgmErrorCode::BadHeader, "maxval");
  if (maxval <= 0 || maxval > 255) {
    throw PgmParseError(PgmErrorCode::BadMaxval, in.last_start(),
                        "maxval must be in [1, 255], got " +
                            std::to_string(maxval));
  }

  const auto count = static_cast<std::size_t>(width * height);
  std::vector<std::uint8_t> pixels;
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (in.pos() >= bytes.size() || !is_space(bytes[in.pos()])) {
      throw PgmParseError(PgmErrorCode::Truncated, in.pos(),
                          "missing raster after header");
    }
    in.advance(1);
    const std::size_t start = in.pos();
    if (bytes.size() - start < count) {
      throw PgmParseError(PgmErrorCode::Truncated, bytes.size(),
                          "expected " + std::to_string(count) +
                              " pixel bytes, found " +
                              std::to_string(bytes.size() - start));
    }
    pixels.assign(bytes.begin() + start, bytes.begin() + start + count);
    for (std::size_t i = 0; i < count; ++i) {
      if (pixels[i] > maxval) {
        throw PgmParseError(PgmErrorCode::BadSample, start + i,
                            "sample exceeds maxval");
      }
    }
  } else {
    pixels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const long long v = in.read_int(PgmErrorCode::Truncated, "sample");
      if (v < 0 || v > maxval) {
        throw PgmParseError(PgmErrorCode::BadSample, in.last_start(),
                            "sample " + std::to_string(v) +
                                " outside [0, maxval]");
      }
      pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  return load_pgm(read_file_bytes(path));
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& image) {
  write_file_bytes(path, save_pgm(image));
}

}  // namespace edgeprint
