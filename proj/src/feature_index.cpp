#include "pud/feature_index.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "pud/errors.hpp"

namespace pud {
namespace {

constexpr std::array<char, 4> kMagic{'P', 'U', 'D', 'X'};
constexpr std::uint32_t kMaxDim = 1u << 20;

template <typename U>
void put_le(std::ostream& out, U value) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in, const char* what) {
    std::array<unsigned char, sizeof(U)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) {
        throw Error(ErrorCode::DataError, std::string("index truncated while reading ") + what);
    }
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        value |= static_cast<U>(bytes[i]) << (8 * i);
    }
    return value;
}

void put_string(std::ostream& out, const std::string& s, const char* what) {
    if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw Error(ErrorCode::DataError, std::string(what) + " longer than 65535 bytes");
    }
    put_le(out, static_cast<std::uint16_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const char* what) {
    const auto len = get_le<std::uint16_t>(in, what);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) {
        throw Error(ErrorCode::DataError, std::string("index truncated while reading ") + what);
    }
    return s;
}

}  // namespace

std::string_view to_string(DescriptorKind kind) noexcept {
    return kind == DescriptorKind::HSV ? "hsv" : "pud";
}

std::optional<DescriptorKind> parse_descriptor_kind(std::string_view text) noexcept {
    if (text == "pud") return DescriptorKind::PUD;
    if (text == "hsv") return DescriptorKind::HSV;
    return std::nullopt;
}

void write_index(const FeatureIndex& index, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put_le(out, index.formatVersion);
    put_le(out, static_cast<std::uint8_t>(index.kind));
    put_le(out, index.dim);
    put_le(out, static_cast<std::uint64_t>(index.records.size()));
    put_le(out, std::bit_cast<std::uint64_t>(index.beta1));
    put_le(out, std::bit_cast<std::uint64_t>(index.beta2));
    for (const IndexRecord& r : index.records) {
        if (r.descriptor.size() != index.dim) {
            throw Error(ErrorCode::DataError, "record '" + r.imageId + "' has length " +
                                                  std::to_string(r.descriptor.size()) +
                                                  ", index dim is " + std::to_string(index.dim));
        }
        put_string(out, r.imageId, "image id");
        put_string(out, r.classLabel, "class label");
        for (const float v : r.descriptor) {
            put_le(out, std::bit_cast<std::uint32_t>(v));
        }
    }
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing index");
    }
}

FeatureIndex read_index(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw Error(ErrorCode::DataError, "not a feature index (bad magic)");
    }
    FeatureIndex index;
    index.formatVersion = get_le<std::uint32_t>(in, "format version");
    if (index.formatVersion != FeatureIndex::kFormatVersion) {
        throw Error(ErrorCode::DataError,
                    "unsupported index format version " + std::to_string(index.formatVersion));
    }
    const auto kind = get_le<std::uint8_t>(in, "descriptor kind");
    if (kind > static_cast<std::uint8_t>(DescriptorKind::HSV)) {
        throw Error(ErrorCode::DataError, "unknown descriptor kind " + std::to_string(kind));
    }
    index.kind = static_cast<DescriptorKind>(kind);
    index.dim = get_le<std::uint32_t>(in, "dimension");
    if (index.dim > kMaxDim) {
        throw Error(ErrorCode::DataError, "implausible descriptor dimension " + std::to_string(index.dim));
    }
    const auto count = get_le<std::uint64_t>(in, "record count");
    index.beta1 = std::bit_cast<double>(get_le<std::uint64_t>(in, "beta1"));
    index.beta2 = std::bit_cast<double>(get_le<std::uint64_t>(in, "beta2"));

    for (std::uint64_t i = 0; i < count; ++i) {
        IndexRecord r;
        r.imageId = get_string(in, "image id");
        r.classLabel = get_string(in, "class label");
        r.descriptor.resize(index.dim);
        for (float& v : r.descriptor) {
            v = std::bit_cast<float>(get_le<std::uint32_t>(in, "descriptor"));
        }
        index.records.push_back(std::move(r));
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(ErrorCode::DataError, "trailing bytes after last index record");
    }
    return index;
}

void write_index_file(const FeatureIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    }
    write_index(index, out);
    out.close();
    if (!out) {
        throw Error(ErrorCode::IoError, "failed closing '" + path.string() + "'");
    }
}

FeatureIndex read_index_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open index '" + path.string() + "'");
    }
    return read_index(in);
}

LabeledCorpus to_corpus(const FeatureIndex& index) {
    std::vector<CorpusItem> items;
    items.reserve(index.records.size());
    for (const IndexRecord& r : index.records) {
        items.push_back({r.imageId, r.classLabel,
                         std::vector<double>(r.descriptor.begin(), r.descriptor.end())});
    }
    return LabeledCorpus(std::move(items));
}

}  // namespace pud
