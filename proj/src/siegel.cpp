#include "smf2/siegel.hpp"
#include "smf2/arith.hpp"
#include "smf2/qmatrix.hpp"
#include "smf2/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace smf2 {

long igusa_dim(long k) {
    if (k % 2 != 0) throw std::domain_error("igusa_dim: even weight only");
    if (k < 0) return 0;
    long count = 0;
    for (long d = 0; 12 * d <= k; ++d)
        for (long c = 0; 10 * c + 12 * d <= k; ++c) {
            long rem = k - 10 * c - 12 * d;
            for (long b = 0; 6 * b <= rem; ++b)
                if ((rem - 6 * b) % 4 == 0) ++count;
        }
    return count;
}

// --- sources ---------------------------------------------------------------

Rat SiegelSource::coeff(const BQF& T) {
    BQF red = is_reduced(T) ? T : reduce(T).form;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(red);
        if (it != memo_.end()) return it->second;
    }
    Rat v = compute(red);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(red, v);
    return v;
}

std::unordered_map<BQF, Rat, BQFHash> SiegelSource::memo_snapshot() const {
    std::lock_guard<std::mutex> lk(mu_);
    return memo_;
}

void SiegelSource::memo_insert(const BQF& reduced, const Rat& value) {
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(reduced, value);
}

bool SiegelSource::memo_lookup(const BQF& reduced, Rat& out) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(reduced);
    if (it == memo_.end()) return false;
    out = it->second;
    return true;
}

LiftSource::LiftSource(const JacobiIndex1Form& phi, std::string label)
    : SiegelSource(phi.weight, std::move(label)), phi_(phi) {
    if (phi.weight < 4) throw std::domain_error("gritsenko lift needs weight >= 4");
}

const Rat& LiftSource::jc(long D) {
    std::lock_guard<std::mutex> lk(jmu_);
    while (true) {
        try {
            return phi_.c(D);
        } catch (const ExtendPrecisionError& e) {
            if (!phi_.extendable()) throw;
            long target = std::max(2 * phi_.Dmax, e.needed + e.needed / 4 + 16);
            phi_ = extend_to(phi_, target);
        }
    }
}

Rat LiftSource::lift_value(long content, long detkey) {
    if (content == 0) {
        // a(0) = -(B_k / 2k) c(0)
        return -bernoulli((unsigned)weight_) / Rat(2 * weight_) * jc(0);
    }
    long long key = ((long long)content << 40) ^ (long long)detkey;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = lift_memo_.find(key);
        if (it != lift_memo_.end()) return it->second;
    }
    Rat acc = 0;
    for (long d : divisors(content)) {
        const Rat& c = jc(detkey / (d * d));
        if (c != 0) acc += Rat(int_pow(Int(d), (unsigned long)(weight_ - 1))) * c;
    }
    std::lock_guard<std::mutex> lk(mu_);
    lift_memo_.emplace(key, acc);
    return acc;
}

Rat LiftSource::compute(const BQF& red) {
    return lift_value(content(red), det_key(red));
}

ProductSource::ProductSource(std::shared_ptr<LiftSource> g1, std::shared_ptr<LiftSource> g2)
    : SiegelSource(g1->weight() + g2->weight(), g1->label() + "*" + g2->label()),
      g1_(std::move(g1)), g2_(std::move(g2)) {}

Rat ProductSource::aggregate(const VTable& vt) {
    Rat acc = 0;
    for (const auto& [key, count] : vt) {
        Rat a1 = g1_->lift_value(key.e1, key.d1);
        if (a1 == 0) continue;
        Rat a2 = g2_->lift_value(key.e2, key.d2);
        if (a2 == 0) continue;
        acc += Rat(count) * a1 * a2;
    }
    return acc;
}

Rat ProductSource::compute(const BQF& t) {
    // estimate of the decomposition count; stream instead of materializing
    // the table when it is large (deep eigenvalue extractions)
    double est = (double)(t.a + 1) * (double)(t.c + 1) *
                 (2.0 * std::sqrt((double)t.a * (double)t.c) + 1.0);
    if (est <= 300000.0) return aggregate(decompositions(t));
    Rat acc = 0;
    for (long a1 = 0; a1 <= t.a; ++a1) {
        long a2 = t.a - a1;
        for (long c1 = 0; c1 <= t.c; ++c1) {
            long c2 = t.c - c1;
            double w1 = 2.0 * std::sqrt((double)a1 * (double)c1);
            double w2 = 2.0 * std::sqrt((double)a2 * (double)c2);
            long lo = std::max((long)std::ceil(-w1 - 1), t.b - (long)std::floor(w2 + 1));
            long hi = std::min((long)std::floor(w1 + 1), t.b + (long)std::floor(w2 + 1));
            for (long b1 = lo; b1 <= hi; ++b1) {
                if (b1 * b1 > 4 * a1 * c1) continue;
                long b2 = t.b - b1;
                if (b2 * b2 > 4 * a2 * c2) continue;
                BQF t1{a1, b1, c1}, t2{a2, b2, c2};
                Rat a_1 = g1_->lift_value(content(t1), det_key(t1));
                if (a_1 == 0) continue;
                Rat a_2 = g2_->lift_value(content(t2), det_key(t2));
                if (a_2 == 0) continue;
                acc += a_1 * a_2;
            }
        }
    }
    return acc;
}

ComboSource::ComboSource(long weight, std::vector<std::pair<Rat, SourcePtr>> parts,
                         std::string label)
    : SiegelSource(weight, std::move(label)), parts_(std::move(parts)) {}

Rat ComboSource::compute(const BQF& red) {
    Rat acc = 0;
    for (auto& [s, src] : parts_) acc += s * src->coeff(red);
    return acc;
}

SourcePtr gritsenko_lift(const JacobiIndex1Form& phi, const std::string& label) {
    return std::make_shared<LiftSource>(phi, label);
}

std::vector<Rat> coeff_row(const std::vector<SourcePtr>& sources, const BQF& T) {
    BQF red = is_reduced(T) ? T : reduce(T).form;
    std::vector<Rat> row(sources.size());
    std::shared_ptr<VTable> vt; // one decomposition table shared by all products
    for (size_t i = 0; i < sources.size(); ++i) {
        if (sources[i]->memo_lookup(red, row[i])) continue;
        auto* prod = dynamic_cast<ProductSource*>(sources[i].get());
        if (prod) {
            if (!vt) vt = std::make_shared<VTable>(decompositions(red));
            Rat v = prod->aggregate(*vt);
            prod->memo_insert(red, v);
            row[i] = v;
        } else {
            row[i] = sources[i]->coeff(red);
        }
    }
    return row;
}

// --- generating sets --------------------------------------------------------

namespace {

struct Candidate {
    SourceLabel label;
    SourcePtr source;
    long max_weight; // ordering key for products
};

std::vector<std::shared_ptr<LiftSource>> lift_sources_for_weight(
    long k, std::unordered_map<long, std::vector<std::shared_ptr<LiftSource>>>& cache,
    std::unordered_map<long, std::vector<JacobiLabel>>& label_cache) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    auto labels = spezialschar_labels(k, 4 * k + 64);
    std::vector<std::shared_ptr<LiftSource>> out;
    std::vector<JacobiLabel> ls;
    for (auto& lf : labels) {
        out.push_back(std::make_shared<LiftSource>(lf.form, lf.label.str()));
        ls.push_back(lf.label);
    }
    cache[k] = out;
    label_cache[k] = ls;
    return out;
}

struct GreedyState {
    std::vector<Candidate> selected;
    long rank = 0;
};

} // namespace

static GenReport build_generating(long k, bool want_basis) {
    if (k % 2 != 0 || k < 4) throw std::domain_error("verify_generating: even k >= 4");
    GenReport rep;
    rep.weight = k;
    rep.dim = igusa_dim(k);

    std::unordered_map<long, std::vector<std::shared_ptr<LiftSource>>> lift_cache;
    std::unordered_map<long, std::vector<JacobiLabel>> label_cache;

    // spezialschar lifts of weight k (always part of the generating set)
    std::vector<Candidate> lifts;
    {
        auto srcs = lift_sources_for_weight(k, lift_cache, label_cache);
        auto& labels = label_cache[k];
        for (size_t i = 0; i < srcs.size(); ++i) {
            SourceLabel sl;
            sl.is_product = false;
            sl.l1 = labels[i];
            lifts.push_back({sl, srcs[i], 0});
        }
    }

    // product candidates ordered by (max lift weight ascending, label order)
    std::vector<Candidate> products;
    {
        std::vector<std::pair<long, long>> partitions;
        for (long k1 = 4; 2 * k1 <= k; k1 += 2) partitions.push_back({k1, k - k1});
        std::sort(partitions.begin(), partitions.end(),
                  [](auto& x, auto& y) { return x.second < y.second; });
        for (auto& [k1, k2] : partitions) {
            auto s1 = lift_sources_for_weight(k1, lift_cache, label_cache);
            auto s2 = lift_sources_for_weight(k2, lift_cache, label_cache);
            auto& l1 = label_cache[k1];
            auto& l2 = label_cache[k2];
            if (s1.empty() || s2.empty()) continue;
            for (size_t i = 0; i < s1.size(); ++i) {
                size_t jstart = (k1 == k2) ? i : 0;
                for (size_t j = jstart; j < s2.size(); ++j) {
                    SourceLabel sl;
                    sl.is_product = true;
                    sl.l1 = l1[i];
                    sl.l2 = l2[j];
                    products.push_back({sl, std::make_shared<ProductSource>(s1[i], s2[j]), k2});
                }
            }
        }
    }

    const auto& primes = multimod_primes();
    long Dmax = 4 * k;
    long prev_rank = -1;
    GreedyState state;

    for (int round = 0; round < 12; ++round) {
        auto forms = reduced_forms_up_to(Dmax, rep.dim + 4);
        // coefficient rows for all candidates at all forms
        std::vector<SourcePtr> all;
        for (auto& c : lifts) all.push_back(c.source);
        for (auto& c : products) all.push_back(c.source);
        std::vector<std::vector<Rat>> cols(all.size());
        for (auto& col : cols) col.reserve(forms.size());
        for (const BQF& t : forms) {
            auto row = coeff_row(all, t);
            for (size_t i = 0; i < all.size(); ++i) cols[i].push_back(row[i]);
        }
        // greedy over two primes: accept when independent mod either prime
        state = GreedyState{};
        FpSpan span1(primes[0]), span2(primes[1]);
        auto try_add = [&](const Candidate& c, const std::vector<Rat>& col) {
            bool ind1 = span1.add(reduce_row_mod_p(col, primes[0]));
            bool ind2 = span2.add(reduce_row_mod_p(col, primes[1]));
            if (ind1 || ind2) {
                state.selected.push_back(c);
                ++state.rank;
                return true;
            }
            return false;
        };
        for (size_t i = 0; i < lifts.size(); ++i) try_add(lifts[i], cols[i]);
        for (size_t i = 0; i < products.size() && state.rank < rep.dim; ++i)
            try_add(products[i], cols[lifts.size() + i]);

        if (state.rank == rep.dim) break;
        if (state.rank == prev_rank) break; // stabilized short of dim
        prev_rank = state.rank;
        Dmax *= 2;
    }

    rep.rank = state.rank;
    rep.ok = (state.rank == rep.dim);
    for (auto& c : state.selected)
        if (c.label.is_product) rep.products.push_back(c.label);

    if (want_basis && rep.ok) {
        ProductBasis basis;
        basis.weight = k;
        basis.dim = rep.dim;
        for (auto& c : state.selected) {
            basis.labels.push_back(c.label);
            basis.sources.push_back(c.source);
        }
        // pivot forms: ascending scan until the dim x dim minor is invertible mod p
        auto forms = reduced_forms_up_to(Dmax, rep.dim + 4);
        FpSpan span(primes[0]);
        for (const BQF& t : forms) {
            auto row = coeff_row(basis.sources, t);
            if (span.add(reduce_row_mod_p(row, primes[0]))) {
                basis.pivots.push_back(t);
                if ((long)basis.pivots.size() == rep.dim) break;
            }
        }
        if ((long)basis.pivots.size() != rep.dim)
            throw std::logic_error("product_basis: pivot search failed");
        rep.basis = std::move(basis);
    }
    return rep;
}

GenReport verify_generating(long k) { return build_generating(k, false); }

ProductBasis product_basis(long k) {
    GenReport rep = build_generating(k, true);
    if (!rep.ok || !rep.basis)
        throw std::runtime_error("product_basis: generating-set verification failed at weight " +
                                 std::to_string(k));
    return *rep.basis;
}

long pivot_max_discriminant(long k, const ProductBasis& basis) {
    (void)k;
    const auto& primes = multimod_primes();
    long best = -1;
    for (int pi = 0; pi < 2; ++pi) {
        // enough forms to certainly reach full rank: grow until done
        long Dmax = 64;
        while (true) {
            auto forms = reduced_forms_up_to(Dmax, basis.dim + 4);
            FpSpan span(primes[pi]);
            long deepest = 0;
            bool full = false;
            for (const BQF& t : forms) {
                auto row = coeff_row(basis.sources, t);
                if (span.add(reduce_row_mod_p(row, primes[pi]))) {
                    deepest = std::max(deepest, det_key(t));
                    if ((long)span.rank() == basis.dim) { full = true; break; }
                }
            }
            if (full) {
                long val = deepest == 0 ? 0 : deepest + 1;
                best = (best < 0) ? val : std::min(best, val);
                break;
            }
            Dmax *= 2;
            if (Dmax > (1 << 22)) throw std::runtime_error("pivot scan did not reach full rank");
        }
    }
    return best;
}

double slope_fit(const std::vector<std::pair<long, long>>& table) {
    if (table.size() < 2) throw std::domain_error("slope_fit needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = table.size();
    for (auto& [k, d] : table) {
        double x = std::log((double)k), y = std::log((double)std::max<long>(d, 1));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

// --- cache -------------------------------------------------------------------

namespace {
std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}
} // namespace

void cache_store(const SiegelSource& src, const std::string& path) {
    auto memo = src.memo_snapshot();
    std::vector<std::pair<BQF, Rat>> entries(memo.begin(), memo.end());
    std::sort(entries.begin(), entries.end(), [](auto& x, auto& y) {
        long kx = det_key(x.first), ky = det_key(y.first);
        if (kx != ky) return kx < ky;
        if (x.first.a != y.first.a) return x.first.a < y.first.a;
        if (x.first.b != y.first.b) return x.first.b < y.first.b;
        return x.first.c < y.first.c;
    });
    std::ostringstream body;
    for (auto& [t, v] : entries)
        body << t.a << " " << t.b << " " << t.c << " : " << v.get_str() << "\n";
    std::string bytes = body.str();
    uint64_t sum = fnv1a64(bytes.data(), bytes.size());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cache_store: cannot write " + tmp);
        out << "SIEGEL-CACHE v1 weight=" << src.weight() << " kind=" << src.label()
            << " checksum=" << hex64(sum) << "\n";
        out << bytes;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cache_store: atomic rename failed");
}

size_t cache_load(SiegelSource& src, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cache_load: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::ostringstream expect;
    expect << "SIEGEL-CACHE v1 weight=" << src.weight() << " kind=" << src.label()
           << " checksum=";
    if (header.rfind(expect.str(), 0) != 0)
        throw std::runtime_error("cache_load: header mismatch (" + header + ")");
    std::string stated = header.substr(expect.str().size());
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (hex64(fnv1a64(rest.data(), rest.size())) != stated)
        throw std::runtime_error("cache_load: checksum failure");
    std::istringstream body(rest);
    std::string line;
    size_t count = 0;
    while (std::getline(body, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long a, b, c;
        std::string colon, val;
        if (!(ls >> a >> b >> c >> colon >> val) || colon != ":")
            throw std::runtime_error("cache_load: malformed line: " + line);
        Rat v = rat_parse(val);
        rat_assert_canonical(v);
        src.memo_insert(BQF{a, b, c}, v);
        ++count;
    }
    return count;
}

void jacobi_cache_store(const JacobiIndex1Form& f, const std::string& label,
                        const std::string& path) {
    std::ostringstream body;
    for (long D = 0; D <= f.Dmax; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        body << D << " 0 0 : " << f.c(D).get_str() << "\n";
    }
    std::string bytes = body.str();
    uint64_t sum = fnv1a64(bytes.data(), bytes.size());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("jacobi_cache_store: cannot write " + tmp);
        out << "SIEGEL-CACHE v1 weight=" << f.weight << " kind=jacobi:" << label
            << " checksum=" << hex64(sum) << "\n";
        out << bytes;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("jacobi_cache_store: atomic rename failed");
}

std::optional<std::vector<Rat>> jacobi_cache_load(long weight, const std::string& label,
                                                  const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::ostringstream expect;
    expect << "SIEGEL-CACHE v1 weight=" << weight << " kind=jacobi:" << label << " checksum=";
    if (header.rfind(expect.str(), 0) != 0)
        throw std::runtime_error("jacobi_cache_load: header mismatch");
    std::string stated = header.substr(expect.str().size());
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (hex64(fnv1a64(rest.data(), rest.size())) != stated)
        throw std::runtime_error("jacobi_cache_load: checksum failure");
    std::istringstream body(rest);
    std::string line;
    std::vector<Rat> table;
    while (std::getline(body, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long D, z1, z2;
        std::string colon, val;
        if (!(ls >> D >> z1 >> z2 >> colon >> val) || colon != ":")
            throw std::runtime_error("jacobi_cache_load: malformed line: " + line);
        if ((long)table.size() <= D) table.resize((size_t)D + 1, rat(0));
        table[(size_t)D] = rat_parse(val);
    }
    return table;
}

} // namespace smf2
