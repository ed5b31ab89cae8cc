#pragma once

#include <filesystem>
#include <iosfwd>

#include "moobench/problems/glyphs.hpp"

namespace moobench::problems {

/// Flat dataset file.
///
/// Line 1 is a text header:
///   moobench-glyphs 1 glyph_size=.. canvas_size=.. classes=.. shift=.. noise_std=..
///   density=.. flip=.. min_intensity=.. train=.. validation=.. test=.. seed=..
/// (a single line; doubles carry 17 significant digits). It is followed by the
/// train, validation and test records back to back. Each record is
///   uint64 id, int32 label_tl, int32 label_br, canvas_size^2 float64 pixels
/// in little-endian byte order, pixels row-major.
void write_dataset(std::ostream& out, const GlyphDataset& dataset);
GlyphDataset read_dataset(std::istream& in);

void save_dataset(const std::filesystem::path& path, const GlyphDataset& dataset);
GlyphDataset load_dataset(const std::filesystem::path& path);

}  // namespace moobench::problems
