#pragma once

#include <memory>
#include <string>

#include "locspan/multigraph.hpp"
#include "locspan/params.hpp"
#include "locspan/sampler.hpp"

namespace locspan {

struct SpannerBuild {
    std::vector<EdgeId> edges;
    std::uint32_t stretch_bound;
};

/// Point where an alternative spanner construction (e.g. one with a different
/// stretch/size tradeoff, run on top of the broadcast scheme) can be slotted
/// in front of t_local_broadcast. Only the sampling construction ships.
class SpannerAlgorithm {
public:
    virtual ~SpannerAlgorithm() = default;
    virtual std::string name() const = 0;
    virtual SpannerBuild build(const MultiGraph& g) = 0;
};

class SamplingSpanner final : public SpannerAlgorithm {
public:
    explicit SamplingSpanner(Params params) : params_(std::move(params)) {}
    std::string name() const override { return "sampling"; }
    SpannerBuild build(const MultiGraph& g) override {
        Params p = params_;
        p.n = g.node_count();
        SamplerOutput out = run_sampler(g, p);
        return {std::move(out.result.edges), out.result.stretch_bound};
    }

private:
    Params params_;
};

} // namespace locspan
