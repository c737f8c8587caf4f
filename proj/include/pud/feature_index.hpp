#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pud/evaluation.hpp"

namespace pud {

enum class DescriptorKind : std::uint8_t { PUD = 0, HSV = 1 };

std::string_view to_string(DescriptorKind kind) noexcept;
std::optional<DescriptorKind> parse_descriptor_kind(std::string_view text) noexcept;

struct IndexRecord {
    std::string imageId;
    std::string classLabel;
    std::vector<float> descriptor;

    friend bool operator==(const IndexRecord&, const IndexRecord&) = default;
};

// On-disk layout (little-endian):
//   "PUDX" | version u32 | kind u8 | dim u32 | count u64 | beta1 f64 | beta2 f64
//   per record: idLen u16, id bytes, labelLen u16, label bytes, dim x f32
// Version 1 implies the H-major 8x4x4 colour quantizer layout.
struct FeatureIndex {
    static constexpr std::uint32_t kFormatVersion = 1;

    std::uint32_t formatVersion = kFormatVersion;
    DescriptorKind kind = DescriptorKind::PUD;
    std::uint32_t dim = 0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::vector<IndexRecord> records;

    friend bool operator==(const FeatureIndex&, const FeatureIndex&) = default;
};

void write_index(const FeatureIndex& index, std::ostream& out);
FeatureIndex read_index(std::istream& in);

void write_index_file(const FeatureIndex& index, const std::filesystem::path& path);
FeatureIndex read_index_file(const std::filesystem::path& path);

// Widens stored f32 values to f64 for ranking.
LabeledCorpus to_corpus(const FeatureIndex& index);

}  // namespace pud
