#include "orthoreal/io.hpp"

#include <fstream>
#include <sstream>

#include "orthoreal/constructions.hpp" // field_for registry keeps parsed fields alive

namespace ortho {

std::string serialize_matrix(const FqMatrix& m) {
    const Field& F = m.field();
    std::ostringstream os;
    os << "q=" << F.p() << "^" << F.k() << " n=" << m.rows() << " m=" << m.cols() << "\n";
    for (uint32_t i = 0; i < m.rows(); ++i) {
        for (uint32_t j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            if (F.k() == 1) {
                os << m.at(i, j);
            } else {
                auto d = F.digits(m.at(i, j));
                for (uint32_t t = 0; t < F.k(); ++t) {
                    if (t) os << ",";
                    os << d[t];
                }
            }
        }
        os << "\n";
    }
    return os.str();
}

FqMatrix parse_matrix(const std::string& text, const Field*& field_out) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) fail(ErrorCode::InvalidConfig, "empty matrix file");
    uint64_t p = 0;
    uint32_t k = 0, rows = 0, cols = 0;
    if (sscanf(header.c_str(), "q=%lu^%u n=%u m=%u", &p, &k, &rows, &cols) != 4)
        fail(ErrorCode::InvalidConfig, "bad matrix header: " + header);
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= p;
    const Field& F = field_for(q);
    FqMatrix m(F, rows, cols);
    for (uint32_t i = 0; i < rows; ++i) {
        for (uint32_t j = 0; j < cols; ++j) {
            std::string tok;
            if (!(is >> tok)) fail(ErrorCode::InvalidConfig, "matrix file truncated");
            if (F.k() == 1) {
                m.at(i, j) = F.of_int(std::stoll(tok));
            } else {
                std::vector<uint64_t> digits;
                std::stringstream ts(tok);
                std::string d;
                while (std::getline(ts, d, ',')) digits.push_back(std::stoull(d));
                m.at(i, j) = F.from_digits(digits);
            }
        }
    }
    field_out = &F;
    return m;
}

std::string serialize_space(const QuadSpace& s) {
    std::string head = s.char_two() ? "form=quad\n" : "form=gram\n";
    return head + serialize_matrix(s.char_two() ? s.quadratic_gram() : s.bilinear_gram());
}

QuadSpace parse_space(const std::string& text) {
    size_t nl = text.find('\n');
    if (nl == std::string::npos) fail(ErrorCode::InvalidConfig, "empty space file");
    std::string head = text.substr(0, nl);
    const Field* F = nullptr;
    FqMatrix m = parse_matrix(text.substr(nl + 1), F);
    if (head == "form=gram") return QuadSpace::from_gram(*F, m);
    if (head == "form=quad") return QuadSpace::from_quadratic(*F, m);
    fail(ErrorCode::InvalidConfig, "bad space header: " + head);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidConfig, "cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidConfig, "cannot write " + path);
    f << content;
}

} // namespace ortho
