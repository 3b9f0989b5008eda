#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "edgeprint/image.hpp"

namespace edgeprint {

/// Decodes binary (P5) or ASCII (P2) PGM with maxval <= 255. Header comments
/// are discarded. Samples are kept as stored, without rescaling to 255.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as binary P5, maxval 255, header "P5\n<w> <h>\n255\n".
std::vector<std::uint8_t> save_pgm(const GrayImage& image);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& image);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes);

}  // namespace edgeprint
