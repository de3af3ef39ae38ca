#include "core/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace dwl::grid {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'D', 'W', 'L', '1'};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;
} // namespace

void save_snapshot(const Field& f, const std::string& path) {
    if (f.space != Space::physical)
        throw std::invalid_argument("save_snapshot: physical-space fields only");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("save_snapshot: cannot open " + path);
    std::uint32_t M = static_cast<std::uint32_t>(f.grid.points_per_axis);
    std::uint32_t ncomp = static_cast<std::uint32_t>(f.components);
    double L = f.grid.half_period;
    std::fwrite(kMagic, 1, 4, fp.get());
    std::fwrite(&M, sizeof(M), 1, fp.get());
    std::fwrite(&L, sizeof(L), 1, fp.get());
    std::fwrite(&ncomp, sizeof(ncomp), 1, fp.get());
    const std::int64_t n = f.slab();
    std::vector<double> row(2 * f.components);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int c = 0; c < f.components; ++c) {
            row[2 * c] = f.comp(c)[i].real();
            row[2 * c + 1] = f.comp(c)[i].imag();
        }
        if (std::fwrite(row.data(), sizeof(double), row.size(), fp.get()) != row.size())
            throw std::runtime_error("save_snapshot: short write on " + path);
    }
}

Field load_snapshot(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("load_snapshot: cannot open " + path);
    char magic[4];
    std::uint32_t M = 0, ncomp = 0;
    double L = 0.0;
    if (std::fread(magic, 1, 4, fp.get()) != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_snapshot: bad magic in " + path);
    if (std::fread(&M, sizeof(M), 1, fp.get()) != 1 ||
        std::fread(&L, sizeof(L), 1, fp.get()) != 1 ||
        std::fread(&ncomp, sizeof(ncomp), 1, fp.get()) != 1)
        throw std::runtime_error("load_snapshot: truncated header in " + path);
    if (ncomp != 1 && ncomp != 4)
        throw std::runtime_error("load_snapshot: bad component count");
    Field f(GridSpec(L, static_cast<int>(M)), static_cast<int>(ncomp));
    const std::int64_t n = f.slab();
    std::vector<double> row(2 * f.components);
    for (std::int64_t i = 0; i < n; ++i) {
        if (std::fread(row.data(), sizeof(double), row.size(), fp.get()) != row.size())
            throw std::runtime_error("load_snapshot: truncated data in " + path);
        for (int c = 0; c < static_cast<int>(ncomp); ++c)
            f.comp(c)[i] = cplx(row[2 * c], row[2 * c + 1]);
    }
    return f;
}

} // namespace dwl::grid
