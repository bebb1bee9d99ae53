#ifndef SMF2_SIEGEL_HPP
#define SMF2_SIEGEL_HPP

#include "smf2/binquad.hpp"
#include "smf2/jacobi.hpp"
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace smf2 {

long igusa_dim(long k); // monomials 4a + 6b + 10c + 12d = k

// Weight-tagged provider of exact Siegel Fourier coefficients a(T) for
// reduced PSD half-integral T. GL2(Z)-invariance comes from reduced-key
// memoization; lift coefficients factor through (content, 4 det).
class SiegelSource {
public:
    virtual ~SiegelSource() = default;
    long weight() const { return weight_; }
    const std::string& label() const { return label_; }

    // a(T) for arbitrary PSD T (reduces internally, memoizes)
    Rat coeff(const BQF& T);

    std::unordered_map<BQF, Rat, BQFHash> memo_snapshot() const;
    void memo_insert(const BQF& reduced, const Rat& value);
    bool memo_lookup(const BQF& reduced, Rat& out) const;

protected:
    SiegelSource(long w, std::string label) : weight_(w), label_(std::move(label)) {}
    virtual Rat compute(const BQF& reduced) = 0;

    long weight_;
    std::string label_;
    mutable std::mutex mu_;
    std::unordered_map<BQF, Rat, BQFHash> memo_;
};

using SourcePtr = std::shared_ptr<SiegelSource>;

class LiftSource : public SiegelSource {
public:
    LiftSource(const JacobiIndex1Form& phi, std::string label);

    // a restricted to (content, 4 det T); the whole lift formula
    Rat lift_value(long content, long detkey);
    const JacobiIndex1Form& jacobi() const { return phi_; }

protected:
    Rat compute(const BQF& reduced) override;

private:
    const Rat& jc(long D); // c(D) with on-demand table extension
    JacobiIndex1Form phi_;
    std::mutex jmu_;
    std::unordered_map<long long, Rat> lift_memo_; // key = content * 2^40 + detkey
};

class ProductSource : public SiegelSource {
public:
    ProductSource(std::shared_ptr<LiftSource> g1, std::shared_ptr<LiftSource> g2);
    std::shared_ptr<LiftSource> factor1() const { return g1_; }
    std::shared_ptr<LiftSource> factor2() const { return g2_; }

    Rat aggregate(const VTable& vt); // sum v * a1 * a2 over buckets

protected:
    Rat compute(const BQF& reduced) override;

private:
    std::shared_ptr<LiftSource> g1_, g2_;
};

class ComboSource : public SiegelSource {
public:
    ComboSource(long weight, std::vector<std::pair<Rat, SourcePtr>> parts, std::string label);

protected:
    Rat compute(const BQF& reduced) override;

private:
    std::vector<std::pair<Rat, SourcePtr>> parts_;
};

SourcePtr gritsenko_lift(const JacobiIndex1Form& phi, const std::string& label = "lift");

// one row of the coefficient matrix: a_src(T) for each source, sharing one
// decomposition table for the products
std::vector<Rat> coeff_row(const std::vector<SourcePtr>& sources, const BQF& T);

// --- bases ---------------------------------------------------------------

struct SourceLabel {
    bool is_product = false;
    JacobiLabel l1, l2; // l2 unused for lifts
    std::string str() const { return is_product ? l1.str() + "*" + l2.str() : l1.str(); }
    bool operator==(const SourceLabel& o) const {
        return is_product == o.is_product && l1 == o.l1 && (!is_product || l2 == o.l2);
    }
};

struct ProductBasis {
    long weight = 0;
    long dim = 0;
    std::vector<SourceLabel> labels;
    std::vector<SourcePtr> sources;
    std::vector<BQF> pivots; // dim reduced forms with invertible coefficient minor
};

struct GenReport {
    long weight = 0;
    long dim = 0;
    long rank = 0;
    bool ok = false;
    std::vector<SourceLabel> products; // greedy-selected witness products
    std::optional<ProductBasis> basis;
};

// Rank of spezialschar lifts plus all two-factor products against reduced
// indices up to an adaptively grown depth; greedy witness selection ordered
// by (max lift weight, label order).
GenReport verify_generating(long k);

ProductBasis product_basis(long k); // throws if generation fails

// Depth bound of the canonical pivot set for the basis: 0 when the singular
// block suffices, otherwise 1 + the largest 4*det needed (the strict bound
// the reference tables use).
long pivot_max_discriminant(long k, const ProductBasis& basis);

// least-squares slope of log(maxD) against log(k)
double slope_fit(const std::vector<std::pair<long, long>>& table);

// --- cache ----------------------------------------------------------------

// Canonical text cache:
//   SIEGEL-CACHE v1 weight=<k> kind=<label> checksum=<hex>
//   a b c : num/den        (sorted by (4ac - b^2, a, b))
void cache_store(const SiegelSource& src, const std::string& path);
size_t cache_load(SiegelSource& src, const std::string& path); // entries restored

void jacobi_cache_store(const JacobiIndex1Form& f, const std::string& label,
                        const std::string& path);
std::optional<std::vector<Rat>> jacobi_cache_load(long weight, const std::string& label,
                                                  const std::string& path);

} // namespace smf2

#endif
