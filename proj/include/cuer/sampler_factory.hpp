#pragma once
#include <memory>
#include <stdexcept>
#include <string>

#include "cuer/cer_sampler.hpp"
#include "cuer/cuer_sampler.hpp"
#include "cuer/per_sampler.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/strategy.hpp"
#include "cuer/uniform_sampler.hpp"

namespace cuer {

/// Settings shared by every strategy kind; each kind reads the fields it uses.
struct SamplerOptions {
    std::string kind = "uniform"; // uniform | per | cer | cuer | cer+cuer
    std::size_t batch_size = 32;
    double alpha = 0.6;
    double beta0 = 0.4;
    double eps_per = 1e-3;
    double eps_min = 1.0;
    bool stratified = false;
    bool use_weights = true;
};

inline std::unique_ptr<SamplingStrategy> make_sampler(const SamplerOptions& options,
                                                      const ReplayBuffer& buffer) {
    if (options.kind == "uniform") {
        return std::make_unique<UniformSampler>(buffer);
    }
    if (options.kind == "per") {
        PerOptions per;
        per.alpha = options.alpha;
        per.beta0 = options.beta0;
        per.eps_per = options.eps_per;
        per.stratified = options.stratified;
        per.use_weights = options.use_weights;
        return std::make_unique<PerSampler>(buffer, per);
    }
    if (options.kind == "cuer" || options.kind == "cer+cuer") {
        CuerOptions cuer;
        cuer.batch_size = options.batch_size;
        cuer.eps_min = options.eps_min;
        cuer.stratified = options.stratified;
        auto inner = std::make_unique<CuerSampler>(buffer, cuer);
        if (options.kind == "cuer") return inner;
        return std::make_unique<CerSampler>(std::move(inner), buffer, "cer+cuer");
    }
    if (options.kind == "cer") {
        return std::make_unique<CerSampler>(std::make_unique<UniformSampler>(buffer), buffer,
                                            "cer");
    }
    throw std::invalid_argument("unknown sampler kind: " + options.kind);
}

} // namespace cuer
