#include "mpdist/geometry.hpp"

#include "mpdist/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mpdist {

Coord coord_bound(std::size_t dim) {
    if (dim == 0) throw UsageError("dimension must be positive");
    // Largest c with c^2 <= 2^60 / dim, so that dim * (2c)^2 <= 2^62.
    const unsigned __int128 limit = (static_cast<unsigned __int128>(1) << 60) / dim;
    auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit)));
    while (static_cast<unsigned __int128>(c) * c > limit) --c;
    while (static_cast<unsigned __int128>(c + 1) * (c + 1) <= limit) ++c;
    return static_cast<Coord>(c);
}

PointSet::PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw UsageError("point set dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<Coord> flat) : dim_(dim), flat_(std::move(flat)) {
    if (dim == 0) throw UsageError("point set dimension must be positive");
    if (flat_.size() % dim_ != 0) {
        throw UsageError("coordinate count " + std::to_string(flat_.size()) +
                         " is not a multiple of dimension " + std::to_string(dim_));
    }
    validate();
}

PointSet::PointSet(std::size_t dim, const std::vector<Point>& points) : dim_(dim) {
    if (dim == 0) throw UsageError("point set dimension must be positive");
    flat_.reserve(points.size() * dim);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) {
            throw UsageError("point " + std::to_string(i) + " has " +
                             std::to_string(points[i].size()) + " coordinates, expected " +
                             std::to_string(dim));
        }
        flat_.insert(flat_.end(), points[i].begin(), points[i].end());
    }
    validate();
}

void PointSet::validate() const {
    const Coord bound = coord_bound(dim_);
    for (Coord c : flat_) {
        if (c > bound || c < -bound) {
            throw UsageError("coordinate " + std::to_string(c) + " exceeds magnitude bound " +
                             std::to_string(bound) + " for dimension " + std::to_string(dim_));
        }
    }
    const std::size_t n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row = [&](std::size_t i) { return (*this)[i]; };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ra = row(a);
        auto rb = row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    for (std::size_t k = 1; k < n; ++k) {
        auto ra = row(order[k - 1]);
        auto rb = row(order[k]);
        if (std::equal(ra.begin(), ra.end(), rb.begin())) {
            throw UsageError("duplicate point at indices " +
                             std::to_string(std::min(order[k - 1], order[k])) + " and " +
                             std::to_string(std::max(order[k - 1], order[k])));
        }
    }
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    std::vector<Coord> out;
    out.reserve(indices.size() * dim_);
    for (std::size_t i : indices) {
        if (i >= size()) throw UsageError("subset index out of range");
        auto r = (*this)[i];
        out.insert(out.end(), r.begin(), r.end());
    }
    return PointSet(dim_, std::move(out));
}

bool PointSet::contains(PointView p) const {
    if (p.size() != dim_) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        auto r = (*this)[i];
        if (std::equal(r.begin(), r.end(), p.begin())) return true;
    }
    return false;
}

std::uint64_t PointSet::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(dim_);
    mix(size());
    for (Coord c : flat_) mix(static_cast<std::uint64_t>(c));
    return h;
}

Partition::Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw UsageError("partition must have at least one part");
    offsets_.assign(1, 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 2) throw UsageError("partition parts must be >= 2");
        if (i > 0 && parts_[i] < parts_[i - 1]) {
            throw UsageError("partition must be non-decreasing: " + str());
        }
        offsets_.push_back(offsets_.back() + parts_[i]);
    }
}

Partition Partition::parse(std::string_view text) {
    // Accept the rendered form "(2,3)" as well.
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
    std::vector<std::size_t> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of(",x", pos);
        if (end == std::string_view::npos) end = text.size();
        auto tok = text.substr(pos, end - pos);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw UsageError("invalid partition '" + std::string(text) + "'");
        }
        parts.push_back(v);
        pos = end + 1;
    }
    return Partition(std::move(parts));
}

bool Partition::all_twos() const {
    return std::all_of(parts_.begin(), parts_.end(), [](std::size_t v) { return v == 2; });
}

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

bool DistanceTuple::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](SqDist v) { return v == 0; });
}

std::string DistanceTuple::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(values[i]);
    }
    return s + ")";
}

Point project(PointView x, const Partition& p, std::size_t block) {
    if (block >= p.q()) {
        throw UsageError("block index " + std::to_string(block) + " out of range for partition " +
                         p.str());
    }
    if (x.size() != p.dim()) {
        throw UsageError("point of dimension " + std::to_string(x.size()) +
                         " does not match partition " + p.str());
    }
    return Point(x.begin() + static_cast<std::ptrdiff_t>(p.offset(block)),
                 x.begin() + static_cast<std::ptrdiff_t>(p.offset(block + 1)));
}

SqDist sq_dist(PointView x, PointView y) {
    if (x.size() != y.size()) {
        throw UsageError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
    }
    __int128 s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        __int128 diff = static_cast<__int128>(x[j]) - y[j];
        s += diff * diff;
    }
    if (s > std::numeric_limits<SqDist>::max()) throw std::overflow_error("squared distance overflow");
    return static_cast<SqDist>(s);
}

DistanceTuple dist_tuple(PointView x, PointView y, const Partition& p) {
    if (x.size() != p.dim() || y.size() != p.dim()) {
        throw UsageError("points do not match partition dimension " + std::to_string(p.dim()));
    }
    DistanceTuple t;
    t.values.reserve(p.q());
    for (std::size_t i = 0; i < p.q(); ++i) {
        auto lo = p.offset(i);
        auto len = p.part(i);
        t.values.push_back(sq_dist(x.subspan(lo, len), y.subspan(lo, len)));
    }
    return t;
}

PointSet project_set(const PointSet& e, const Partition& p, std::size_t block) {
    if (e.dim() != p.dim()) throw UsageError("point set does not match partition " + p.str());
    if (block >= p.q()) throw UsageError("block index out of range");
    const std::size_t lo = p.offset(block);
    const std::size_t len = p.part(block);
    std::vector<std::size_t> order(e.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) { return e[i].subspan(lo, len); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ka = key(a);
        auto kb = key(b);
        return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
    });
    // Keep the first occurrence of every distinct image, then restore input order.
    std::vector<std::size_t> firsts;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || !std::ranges::equal(key(order[k - 1]), key(order[k]))) {
            firsts.push_back(order[k]);
        }
    }
    std::sort(firsts.begin(), firsts.end());
    std::vector<Coord> flat;
    flat.reserve(firsts.size() * len);
    for (std::size_t i : firsts) {
        auto k = key(i);
        flat.insert(flat.end(), k.begin(), k.end());
    }
    return PointSet(len, std::move(flat));
}

void write_point_set(std::ostream& os, const PointSet& e) {
    os << "dim=" << e.dim() << " n=" << e.size() << '\n';
    for (std::size_t i = 0; i < e.size(); ++i) {
        auto r = e[i];
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) os << ' ';
            os << r[j];
        }
        os << '\n';
    }
}

std::string to_text(const PointSet& e) {
    std::ostringstream os;
    write_point_set(os, e);
    return os.str();
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::size_t parse_header_field(std::string_view tok, std::string_view name, std::size_t line_no) {
    if (tok.substr(0, name.size()) != name) {
        throw UsageError("line " + std::to_string(line_no) + ": expected '" + std::string(name) +
                         "<value>' in header");
    }
    tok.remove_prefix(name.size());
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw UsageError("line " + std::to_string(line_no) + ": bad header value");
    }
    return v;
}

// Returns false at clean end of stream before any header.
bool read_one(std::istream& is, std::size_t& line_no, std::vector<PointSet>& out) {
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        have_header = true;
        break;
    }
    if (!have_header) return false;

    std::istringstream hs(line);
    std::string dtok, ntok, extra;
    hs >> dtok >> ntok;
    if (hs >> extra) throw UsageError("line " + std::to_string(line_no) + ": trailing header text");
    const std::size_t dim = parse_header_field(dtok, "dim=", line_no);
    const std::size_t n = parse_header_field(ntok, "n=", line_no);
    if (dim == 0) throw UsageError("line " + std::to_string(line_no) + ": dim must be positive");

    std::vector<Coord> flat;
    flat.reserve(n * dim);
    std::size_t rows = 0;
    while (rows < n && std::getline(is, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::string_view sv(line);
        std::size_t count = 0;
        std::size_t pos = 0;
        while (true) {
            pos = sv.find_first_not_of(" \t\r", pos);
            if (pos == std::string_view::npos) break;
            std::size_t end = sv.find_first_of(" \t\r", pos);
            if (end == std::string_view::npos) end = sv.size();
            auto tok = sv.substr(pos, end - pos);
            Coord v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw UsageError("line " + std::to_string(line_no) + ": invalid integer '" +
                                 std::string(tok) + "'");
            }
            flat.push_back(v);
            ++count;
            pos = end;
        }
        if (count != dim) {
            throw UsageError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " coordinates, found " + std::to_string(count));
        }
        ++rows;
    }
    if (rows != n) {
        throw UsageError("header declares " + std::to_string(n) + " points, found " +
                         std::to_string(rows));
    }
    out.emplace_back(dim, std::move(flat));
    return true;
}

}  // namespace

PointSet read_point_set(std::istream& is) {
    std::vector<PointSet> out;
    std::size_t line_no = 0;
    if (!read_one(is, line_no, out)) throw UsageError("no point set header found");
    return std::move(out.front());
}

PointSet parse_point_set(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_point_set(is);
}

std::vector<PointSet> read_point_sets(std::istream& is) {
    std::vector<PointSet> out;
    std::size_t line_no = 0;
    while (read_one(is, line_no, out)) {
    }
    return out;
}

PointSet load_point_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open point set file '" + path + "'");
    return read_point_set(in);
}

void save_point_set(const std::string& path, const PointSet& e) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write point set file '" + path + "'");
    write_point_set(out, e);
}

}  // namespace mpdist
