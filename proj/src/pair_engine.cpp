#include "pair_engine.hpp"

#include "mpdist/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <thread>

namespace mpdist::detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Chunk {
    std::size_t row_begin;
    std::size_t row_end;
    u64 pairs;
};

struct Geometry {
    std::size_t dim = 0;
    std::size_t q = 0;
    std::vector<std::size_t> offsets;
    std::vector<u64> radix;  // per block: max squared distance + 1
    u128 key_space = 1;      // saturates at 2^64
    bool packed = false;
};

Geometry analyze(const PointSet& e, const PointSet& f, const std::vector<std::size_t>& offsets) {
    Geometry g;
    g.dim = e.dim();
    g.q = offsets.size() - 1;
    g.offsets = offsets;
    std::vector<Coord> lo_e(g.dim, std::numeric_limits<Coord>::max());
    std::vector<Coord> hi_e(g.dim, std::numeric_limits<Coord>::min());
    std::vector<Coord> lo_f = lo_e;
    std::vector<Coord> hi_f = hi_e;
    auto scan = [&](const PointSet& s, std::vector<Coord>& lo, std::vector<Coord>& hi) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto r = s[i];
            for (std::size_t j = 0; j < g.dim; ++j) {
                lo[j] = std::min(lo[j], r[j]);
                hi[j] = std::max(hi[j], r[j]);
            }
        }
    };
    scan(e, lo_e, hi_e);
    scan(f, lo_f, hi_f);
    const u128 cap = static_cast<u128>(std::numeric_limits<u64>::max()) + 1;
    for (std::size_t b = 0; b < g.q; ++b) {
        u64 bound = 0;
        for (std::size_t j = offsets[b]; j < offsets[b + 1]; ++j) {
            __int128 spread = std::max<__int128>(static_cast<__int128>(hi_e[j]) - lo_f[j],
                                                 static_cast<__int128>(hi_f[j]) - lo_e[j]);
            if (spread < 0) spread = 0;
            bound += static_cast<u64>(spread * spread);
        }
        g.radix.push_back(bound + 1);
        g.key_space = std::min(cap, g.key_space * (bound + 1));
    }
    g.packed = g.key_space < cap;
    return g;
}

std::vector<Chunk> make_chunks(std::size_t rows, std::size_t cols, bool symmetric, u64 target) {
    std::vector<Chunk> chunks;
    Chunk cur{0, 0, 0};
    for (std::size_t i = 0; i < rows; ++i) {
        const u64 row_pairs = symmetric ? static_cast<u64>(rows - 1 - i) : cols;
        cur.row_end = i + 1;
        cur.pairs += row_pairs;
        if (cur.pairs >= target) {
            chunks.push_back(cur);
            cur = Chunk{i + 1, i + 1, 0};
        }
    }
    if (cur.row_end > cur.row_begin) chunks.push_back(cur);
    return chunks;
}

// Sorted (key, count) run; merged pairwise like a binary counter so total work
// stays O(N log chunks).
struct Run {
    std::vector<u64> keys;
    std::vector<u64> counts;
    unsigned level = 0;
};

Run merge_runs(const Run& a, const Run& b) {
    Run out;
    out.level = std::max(a.level, b.level) + 1;
    out.keys.reserve(a.keys.size() + b.keys.size());
    out.counts.reserve(a.keys.size() + b.keys.size());
    std::size_t i = 0, j = 0;
    while (i < a.keys.size() || j < b.keys.size()) {
        if (j == b.keys.size() || (i < a.keys.size() && a.keys[i] < b.keys[j])) {
            out.keys.push_back(a.keys[i]);
            out.counts.push_back(a.counts[i++]);
        } else if (i == a.keys.size() || b.keys[j] < a.keys[i]) {
            out.keys.push_back(b.keys[j]);
            out.counts.push_back(b.counts[j++]);
        } else {
            out.keys.push_back(a.keys[i]);
            out.counts.push_back(a.counts[i++] + b.counts[j++]);
        }
    }
    return out;
}

class RunAccumulator {
public:
    void push(Run run) {
        while (!stack_.empty() && stack_.back().level <= run.level) {
            run = merge_runs(stack_.back(), run);
            stack_.pop_back();
        }
        stack_.push_back(std::move(run));
    }
    Run finish() {
        Run out;
        while (!stack_.empty()) {
            out = out.keys.empty() ? std::move(stack_.back()) : merge_runs(stack_.back(), out);
            stack_.pop_back();
        }
        return out;
    }

private:
    std::vector<Run> stack_;
};

// Enumerates every pair of a chunk, calling emit(key_or_tuple) once per pair.
template <class Emit>
void for_each_pair(const Geometry& g, const PointSet& e, const PointSet& f, bool symmetric,
                   const Chunk& c, Emit&& emit) {
    const Coord* ef = e.flat().data();
    const Coord* ff = f.flat().data();
    const std::size_t d = g.dim;
    const std::size_t nf = f.size();
    for (std::size_t i = c.row_begin; i < c.row_end; ++i) {
        const Coord* x = ef + i * d;
        for (std::size_t j = symmetric ? i + 1 : 0; j < nf; ++j) {
            emit(x, ff + j * d);
        }
    }
}

template <class Fn>
void run_workers(std::size_t chunk_count, unsigned threads, Fn&& work) {
    const unsigned workers =
        static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, chunk_count)));
    std::atomic<std::size_t> next{0};
    auto body = [&](unsigned w) {
        for (std::size_t k = next.fetch_add(1); k < chunk_count; k = next.fetch_add(1)) work(w, k);
    };
    if (workers == 1) {
        body(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
}

unsigned worker_count(unsigned threads, std::size_t chunks) {
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, chunks)));
}

TupleCounts decode(const Geometry& g, const std::vector<u64>& keys, const std::vector<u64>& counts) {
    TupleCounts out;
    out.q = g.q;
    out.values.resize(keys.size() * g.q);
    out.nu = counts;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        u64 key = keys[k];
        for (std::size_t b = g.q; b-- > 0;) {
            out.values[k * g.q + b] = static_cast<SqDist>(key % g.radix[b]);
            key /= g.radix[b];
        }
    }
    return out;
}

}  // namespace

CountMode select_mode(const PointSet& e, const PointSet* f, const EngineConfig& cfg) {
    const Geometry g = analyze(e, f ? *f : e, cfg.offsets);
    if (!g.packed) return CountMode::Generic;
    return g.key_space <= cfg.dense_limit ? CountMode::Dense : CountMode::Sorted;
}

TupleCounts count_tuples(const PointSet& e, const PointSet* f_in, const EngineConfig& cfg) {
    const bool symmetric = f_in == nullptr;
    const PointSet& f = symmetric ? e : *f_in;
    if (e.dim() != f.dim()) throw UsageError("point sets have different dimensions");
    if (cfg.offsets.size() < 2 || cfg.offsets.front() != 0 || cfg.offsets.back() != e.dim()) {
        throw UsageError("block layout does not cover the point dimension");
    }
    const u128 ordered = static_cast<u128>(e.size()) * f.size();
    if (cfg.pair_budget != 0 && ordered > cfg.pair_budget) {
        throw BudgetExceeded("instance has " + std::to_string(static_cast<u64>(ordered)) +
                             " ordered pairs, budget is " + std::to_string(cfg.pair_budget));
    }

    const Geometry g = analyze(e, f, cfg.offsets);
    const std::vector<Chunk> chunks =
        make_chunks(e.size(), f.size(), symmetric, std::max<u64>(1, cfg.chunk_pairs));
    const unsigned workers = worker_count(cfg.threads, chunks.size());
    const u64 weight = symmetric ? 2 : 1;
    const std::size_t q = g.q;
    const std::size_t* off = g.offsets.data();
    const u64* radix = g.radix.data();

    auto packed_key = [q, off, radix](const Coord* x, const Coord* y) {
        u64 key = 0;
        for (std::size_t b = 0; b < q; ++b) {
            u64 s = 0;
            for (std::size_t c = off[b]; c < off[b + 1]; ++c) {
                const Coord diff = x[c] - y[c];
                s += static_cast<u64>(diff * diff);
            }
            key = key * radix[b] + s;
        }
        return key;
    };

    std::vector<u64> keys;
    std::vector<u64> counts;
    TupleCounts result;

    if (g.packed && g.key_space <= cfg.dense_limit) {
        const auto space = static_cast<std::size_t>(g.key_space);
        std::vector<std::vector<u64>> tables(workers);
        run_workers(chunks.size(), workers, [&](unsigned w, std::size_t k) {
            auto& table = tables[w];
            if (table.empty()) table.assign(space, 0);
            u64* t = table.data();
            for_each_pair(g, e, f, symmetric, chunks[k],
                          [&](const Coord* x, const Coord* y) { t[packed_key(x, y)] += weight; });
        });
        std::vector<u64> total(space, 0);
        for (const auto& table : tables) {
            for (std::size_t k = 0; k < table.size(); ++k) total[k] += table[k];
        }
        if (symmetric && cfg.include_diagonal && e.size() > 0) total[0] += e.size();
        for (std::size_t k = 0; k < space; ++k) {
            if (total[k] != 0) {
                keys.push_back(k);
                counts.push_back(total[k]);
            }
        }
        result = decode(g, keys, counts);
    } else if (g.packed) {
        std::vector<RunAccumulator> acc(workers);
        run_workers(chunks.size(), workers, [&](unsigned w, std::size_t k) {
            std::vector<u64> buf;
            buf.reserve(chunks[k].pairs);
            for_each_pair(g, e, f, symmetric, chunks[k],
                          [&](const Coord* x, const Coord* y) { buf.push_back(packed_key(x, y)); });
            std::sort(buf.begin(), buf.end());
            Run run;
            for (std::size_t i = 0; i < buf.size();) {
                std::size_t j = i + 1;
                while (j < buf.size() && buf[j] == buf[i]) ++j;
                run.keys.push_back(buf[i]);
                run.counts.push_back(static_cast<u64>(j - i) * weight);
                i = j;
            }
            acc[w].push(std::move(run));
        });
        Run total;
        for (auto& a : acc) {
            Run r = a.finish();
            total = total.keys.empty() ? std::move(r) : merge_runs(total, r);
        }
        if (symmetric && cfg.include_diagonal && e.size() > 0) {
            Run diag;
            diag.keys = {0};
            diag.counts = {e.size()};
            total = merge_runs(diag, total);
        }
        result = decode(g, total.keys, total.counts);
    } else {
        std::vector<std::map<std::vector<SqDist>, u64>> maps(workers);
        run_workers(chunks.size(), workers, [&](unsigned w, std::size_t k) {
            auto& m = maps[w];
            std::vector<SqDist> t(q);
            for_each_pair(g, e, f, symmetric, chunks[k], [&](const Coord* x, const Coord* y) {
                for (std::size_t b = 0; b < q; ++b) {
                    SqDist s = 0;
                    for (std::size_t c = off[b]; c < off[b + 1]; ++c) s += (x[c] - y[c]) * (x[c] - y[c]);
                    t[b] = s;
                }
                m[t] += weight;
            });
        });
        std::map<std::vector<SqDist>, u64> total;
        for (auto& m : maps) {
            for (auto& [t, c] : m) total[t] += c;
        }
        if (symmetric && cfg.include_diagonal && e.size() > 0) {
            total[std::vector<SqDist>(q, 0)] += e.size();
        }
        result.q = q;
        for (auto& [t, c] : total) {
            result.values.insert(result.values.end(), t.begin(), t.end());
            result.nu.push_back(c);
        }
    }

    // Two-set case: the all-zero tuple is realized exactly by the pairs x == y.
    if (!symmetric && !cfg.include_diagonal && !result.nu.empty()) {
        bool zero = std::all_of(result.values.begin(), result.values.begin() + static_cast<std::ptrdiff_t>(q),
                                [](SqDist v) { return v == 0; });
        if (zero) {
            result.values.erase(result.values.begin(), result.values.begin() + static_cast<std::ptrdiff_t>(q));
            result.nu.erase(result.nu.begin());
        }
    }
    return result;
}

}  // namespace mpdist::detail
