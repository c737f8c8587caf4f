#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "image_files.hpp"
#include "pud/dataset.hpp"
#include "pud/errors.hpp"
#include "synthetic.hpp"

namespace pud {
namespace {

namespace fs = std::filesystem;
using testing::ScratchDir;
using testing::write_png;

void make_two_class_tree(const fs::path& root) {
    std::mt19937_64 rng(1);
    write_png(root / "a" / "1.png", testing::random_patchy_image(rng, 16, 12));
    write_png(root / "a" / "2.png", testing::random_patchy_image(rng, 16, 12));
    write_png(root / "b" / "1.png", testing::random_patchy_image(rng, 9, 14));
    write_png(root / "b" / "2.png", testing::random_patchy_image(rng, 9, 14));
    write_png(root / "b" / "3.png", testing::random_patchy_image(rng, 9, 14));
}

std::string serialize(const FeatureIndex& idx) {
    std::ostringstream os(std::ios::binary);
    write_index(idx, os);
    return os.str();
}

TEST(Ingest, DirectoryTreeUsesParentAsLabel) {
    ScratchDir dir("ingest");
    make_two_class_tree(dir.path());
    std::ofstream(dir.path() / "a" / "notes.txt") << "ignored";
    const IngestResult r = ingest(dir.path());
    ASSERT_EQ(r.manifest.entries.size(), 5u);
    EXPECT_TRUE(r.rejected.empty());
    EXPECT_EQ(r.manifest.entries[0].relativePath, "a/1.png");
    EXPECT_EQ(r.manifest.entries[0].imageId, "a/1.png");
    EXPECT_EQ(r.manifest.entries[0].classLabel, "a");
    EXPECT_EQ(r.manifest.entries[4].classLabel, "b");
}

TEST(Ingest, EmptyDirectoryIsEmptyDataset) {
    ScratchDir dir("empty");
    try {
        ingest(dir.path());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyDataset);
    }
}

TEST(Ingest, MissingSourceIsIoError) {
    try {
        ingest("/nonexistent/pud/source");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
}

TEST(Ingest, ManifestFileWithMissingEntry) {
    ScratchDir dir("manifest");
    make_two_class_tree(dir.path());
    std::ofstream(dir.path() / "list.csv") << "# path,label,id\n"
                                              "a/1.png,alpha,first\n"
                                              "\n"
                                              "b/2.png, beta\n"
                                              "b/missing.png,beta\n";
    const IngestResult r = ingest(dir.path() / "list.csv");
    ASSERT_EQ(r.manifest.entries.size(), 2u);
    EXPECT_EQ(r.manifest.entries[0].imageId, "first");
    EXPECT_EQ(r.manifest.entries[0].classLabel, "alpha");
    EXPECT_EQ(r.manifest.entries[1].imageId, "b/2.png");
    EXPECT_EQ(r.manifest.entries[1].classLabel, "beta");
    ASSERT_EQ(r.rejected.size(), 1u);
    EXPECT_EQ(r.rejected[0].path, "b/missing.png");
}

TEST(Ingest, MalformedManifestLineIsDataError) {
    ScratchDir dir("badmanifest");
    std::ofstream(dir.path() / "list.csv") << "just-a-path.png\n";
    try {
        ingest(dir.path() / "list.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DataError);
    }
}

TEST(LoadRaster, DecodesRgbOrder) {
    ScratchDir dir("load");
    RasterImage img(4, 3, Rgb{10, 20, 30});
    img.at(3, 2) = {255, 0, 7};
    write_png(dir.path() / "x.png", img);
    const RasterImage back = load_raster(dir.path() / "x.png");
    EXPECT_EQ(back.width(), 4);
    EXPECT_EQ(back.height(), 3);
    EXPECT_EQ(back.at(0, 0).r, 10);
    EXPECT_EQ(back.at(0, 0).b, 30);
    EXPECT_EQ(back.at(3, 2).r, 255);
    EXPECT_EQ(back.at(3, 2).b, 7);
}

TEST(LoadRaster, CorruptAndTinyImages) {
    ScratchDir dir("corrupt");
    std::ofstream(dir.path() / "bad.png") << "not really a png";
    try {
        load_raster(dir.path() / "bad.png");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DataError);
    }
    cv::imwrite((dir.path() / "tiny.png").string(), cv::Mat(2, 5, CV_8UC3, cv::Scalar(1, 2, 3)));
    try {
        load_raster(dir.path() / "tiny.png");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ImageTooSmall);
    }
}

TEST(ExtractIndex, DimensionsAndDeterminism) {
    ScratchDir dir("extract");
    make_two_class_tree(dir.path());
    const IngestResult r = ingest(dir.path());

    ExtractOptions pud;
    pud.params = {0.5, 1.25};
    const ExtractResult a = extract_index(r.manifest, pud);
    EXPECT_TRUE(a.rejected.empty());
    EXPECT_EQ(a.index.dim, 280u);
    EXPECT_EQ(a.index.records.size(), 5u);
    EXPECT_EQ(a.index.beta1, 0.5);
    EXPECT_EQ(a.index.records[2].imageId, "b/1.png");
    EXPECT_EQ(serialize(extract_index(r.manifest, pud).index), serialize(a.index));

    // Stored values are the f32 rounding of the in-memory descriptor.
    const std::vector<double> direct = extract_pud(load_raster(dir.path() / "a/2.png"), pud.params).h;
    for (std::size_t i = 0; i < direct.size(); ++i) {
        EXPECT_EQ(a.index.records[1].descriptor[i], static_cast<float>(direct[i]));
    }

    ExtractOptions hsv;
    hsv.kind = DescriptorKind::HSV;
    const ExtractResult h = extract_index(r.manifest, hsv);
    EXPECT_EQ(h.index.dim, 128u);
    EXPECT_EQ(h.index.kind, DescriptorKind::HSV);
    EXPECT_EQ(h.index.records[0].descriptor.size(), 128u);
}

TEST(ExtractIndex, UndecodableFilesAreRejectedNotFatal) {
    ScratchDir dir("extractbad");
    make_two_class_tree(dir.path());
    std::ofstream(dir.path() / "a" / "garbage.png") << "garbage";
    // A valid PNG signature followed by a cut-off body passes ingest and fails decoding.
    std::string head;
    {
        std::ifstream in(dir.path() / "a" / "1.png", std::ios::binary);
        head.assign(std::istreambuf_iterator<char>(in), {});
    }
    std::ofstream(dir.path() / "b" / "truncated.png", std::ios::binary) << head.substr(0, 40);

    const IngestResult r = ingest(dir.path());
    ASSERT_EQ(r.rejected.size(), 1u);
    EXPECT_EQ(r.rejected[0].path, "a/garbage.png");
    ASSERT_EQ(r.manifest.entries.size(), 6u);

    const ExtractResult e = extract_index(r.manifest, {});
    EXPECT_EQ(e.index.records.size(), 5u);
    ASSERT_EQ(e.rejected.size(), 1u);
    EXPECT_EQ(e.rejected[0].path, "b/truncated.png");
}

}  // namespace
}  // namespace pud
