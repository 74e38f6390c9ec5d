// Regenerates the bundled synthetic before/after logs under data/fixtures/.

#include "fixtures/synthetic.hpp"

#include <zlib.h>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

bool write_gz(const std::filesystem::path& path, const std::string& text)
{
    gzFile f = gzopen(path.c_str(), "wb9");
    if (f == nullptr) {
        return false;
    }
    // Zero mtime in the gzip header keeps the bytes reproducible.
    const int n = gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
    return n == static_cast<int>(text.size());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Write the synthetic 2012/2017-shaped fixture logs"};
    std::filesystem::path out_dir = "data/fixtures";
    std::size_t traces = 600;
    std::uint64_t seed = 2012;
    app.add_option("-o,--output-dir", out_dir, "Destination directory");
    app.add_option("-n,--traces", traces, "Traces per log");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    using bpprod::fixtures::Era;
    std::filesystem::create_directories(out_dir);
    const auto before = bpprod::fixtures::synthetic_bpic(Era::before_2012, traces, seed);
    const auto after = bpprod::fixtures::synthetic_bpic(Era::after_2017, traces, seed + 5);
    const auto p1 = out_dir / "bpic2012_synthetic.xes.gz";
    const auto p2 = out_dir / "bpic2017_synthetic.xes.gz";
    if (!write_gz(p1, bpprod::fixtures::write_xes(before)) || !write_gz(p2, bpprod::fixtures::write_xes(after))) {
        std::cerr << "failed to write fixtures to " << out_dir << "\n";
        return 3;
    }
    std::cout << p1.string() << "\n" << p2.string() << "\n";
    return 0;
}
