// Microbenchmarks for the hot paths: event calendar throughput, the queue
// disciplines' enqueue/dequeue cycle, incremental statistics, and the
// hypothesis-test pipeline.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "aqmsim/codel.hpp"
#include "aqmsim/engine.hpp"
#include "aqmsim/hypothesis.hpp"
#include "aqmsim/lstfcodel.hpp"
#include "aqmsim/red.hpp"
#include "aqmsim/rng.hpp"
#include "aqmsim/stats.hpp"

using namespace aqmsim;

namespace {

Packet make_packet(std::uint64_t id, std::uint32_t size_bytes) {
    Packet pkt;
    pkt.id = id;
    pkt.flow = "bench";
    pkt.size_bytes = size_bytes;
    return pkt;
}

void bm_engine_event_throughput(benchmark::State& state) {
    for (auto _ : state) {
        Engine engine;
        std::uint64_t fired = 0;
        for (int i = 0; i < state.range(0); ++i)
            engine.schedule(SimTime::from_ns(i), [&fired] { ++fired; });
        engine.run_until(SimTime::from_seconds(1.0));
        benchmark::DoNotOptimize(fired);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <typename MakeQueue>
void qdisc_cycle(benchmark::State& state, MakeQueue make_queue) {
    for (auto _ : state) {
        auto q = make_queue();
        std::mt19937_64 rng(1);
        SimTime now;
        std::uint64_t id = 0;
        for (int i = 0; i < state.range(0); ++i) {
            now += SimTime::from_ns(static_cast<std::int64_t>(rng() % 1000000));
            if (rng() % 2 == 0) {
                q->enqueue(make_packet(id++, 100 + rng() % 1401), now);
            } else {
                auto r = q->dequeue(now);
                benchmark::DoNotOptimize(r);
            }
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_droptail_cycle(benchmark::State& state) {
    qdisc_cycle(state, [] { return std::make_unique<DropTailQueue>(15000); });
}

void bm_codel_cycle(benchmark::State& state) {
    qdisc_cycle(state, [] { return std::make_unique<CoDelQueue>(); });
}

void bm_lstfcodel_cycle(benchmark::State& state) {
    qdisc_cycle(state, [] { return std::make_unique<LstfCodelQueue>(); });
}

void bm_red_cycle(benchmark::State& state) {
    qdisc_cycle(state, [] {
        return std::make_unique<RedQueue>(RedParams{}, make_stream(1, 2), 15000);
    });
}

void bm_welford_push(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    for (double& x : xs) x = dist(rng);
    for (auto _ : state) {
        RunningStats acc;
        for (double x : xs) acc.push(x);
        benchmark::DoNotOptimize(acc.variance_population());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_welch_t_test(benchmark::State& state) {
    auto rng_a = make_stream(1, 101);
    auto rng_b = make_stream(1, 102);
    auto a = clt_sample(0.035, 0.002, static_cast<std::size_t>(state.range(0)), rng_a);
    auto b = clt_sample(0.009, 0.018, static_cast<std::size_t>(state.range(0)), rng_b);
    for (auto _ : state) {
        auto r = welch_t_test(a, b);
        benchmark::DoNotOptimize(r.p_value);
    }
}

BENCHMARK(bm_engine_event_throughput)->Arg(1 << 14);
BENCHMARK(bm_droptail_cycle)->Arg(1 << 14);
BENCHMARK(bm_codel_cycle)->Arg(1 << 14);
BENCHMARK(bm_lstfcodel_cycle)->Arg(1 << 14);
BENCHMARK(bm_red_cycle)->Arg(1 << 14);
BENCHMARK(bm_welford_push)->Arg(1 << 16);
BENCHMARK(bm_welch_t_test)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
