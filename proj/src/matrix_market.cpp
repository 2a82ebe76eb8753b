#include "saddle/matrix_market.hpp"

#include "saddle/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace saddle {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

CsrMatrix mm_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("mm_read: cannot open " + path);

    std::string header;
    if (!std::getline(in, header))
        throw FormatError("mm_read: empty file " + path);

    std::istringstream hs(header);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
        lower(fmt) != "coordinate" || lower(field) != "real")
        throw FormatError("mm_read: malformed header in " + path + ": " + header);
    symmetry = lower(symmetry);
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        throw FormatError("mm_read: unsupported symmetry '" + symmetry + "' in " + path);

    std::string line;
    index_t rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> rows >> cols >> nnz))
            throw FormatError("mm_read: malformed size line in " + path);
        have_size = true;
        break;
    }
    if (!have_size) throw FormatError("mm_read: missing size line in " + path);
    if (rows < 0 || cols < 0 || nnz < 0)
        throw FormatError("mm_read: negative size in " + path);

    std::vector<std::tuple<index_t, index_t, double>> triplets;
    triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
    index_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        index_t i = 0, j = 0;
        double v = 0.0;
        if (!(ls >> i >> j >> v))
            throw FormatError("mm_read: malformed entry line in " + path + ": " + line);
        if (!std::isfinite(v))
            throw FormatError("mm_read: non-finite value in " + path);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw FormatError("mm_read: index out of range in " + path + ": " + line);
        triplets.emplace_back(i - 1, j - 1, v);
        if (symmetric && i != j) triplets.emplace_back(j - 1, i - 1, v);
        ++count;
    }
    if (count != nnz)
        throw FormatError("mm_read: header declares " + std::to_string(nnz) +
                          " entries but file has " + std::to_string(count) + ": " + path);

    return CsrMatrix::from_triplets(rows, cols, std::move(triplets));
}

void mm_write(const std::string& path, const CsrMatrix& A) {
    for (double v : A.values)
        if (!std::isfinite(v))
            throw FormatError("mm_write: non-finite value");

    std::ofstream out(path);
    if (!out) throw FormatError("mm_write: cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.nrows << " " << A.ncols << " " << A.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < A.nrows; ++i) {
        for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.16e",
                          A.values[static_cast<std::size_t>(k)]);
            out << (i + 1) << " " << (A.col_indices[static_cast<std::size_t>(k)] + 1)
                << " " << buf << "\n";
        }
    }
    if (!out) throw FormatError("mm_write: write failed for " + path);
}

} // namespace saddle
