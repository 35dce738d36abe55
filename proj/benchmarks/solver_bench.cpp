#include <benchmark/benchmark.h>

#include "embroidery/calibration.hpp"
#include "embroidery/deformation.hpp"
#include "embroidery/reference_designs.hpp"

using namespace embroidery;
using namespace embroidery::literals;

namespace {

const ActuatorModel& zigzag() {
    static const ActuatorModel m = reference_model(zigzag_reference_designs()[1]);
    return m;
}

const ActuatorModel& cross() {
    static const ActuatorModel m = reference_model(cross_reference_designs()[2]);
    return m;
}

void BM_StrainEnergyGradient(benchmark::State& state) {
    const Length l = 1.04 * zigzag().tube.rest_length;
    for (auto _ : state) benchmark::DoNotOptimize(strain_energy_gradient(l, zigzag()));
}
BENCHMARK(BM_StrainEnergyGradient);

void BM_EquilibriumZigzag(benchmark::State& state) {
    const Pressure p = kilopascals(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equilibrium_length(p, zigzag()));
}
BENCHMARK(BM_EquilibriumZigzag)->Arg(100)->Arg(200)->Arg(300);

void BM_EquilibriumCross(benchmark::State& state) {
    const Pressure p = kilopascals(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equilibrium_length(p, cross()));
}
BENCHMARK(BM_EquilibriumCross)->Arg(200)->Arg(300);

void BM_SweepCurve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sweep_curve(cross(), 300_kPa, 10_kPa));
}
BENCHMARK(BM_SweepCurve)->Unit(benchmark::kMillisecond);

void BM_FitPressureAngle(benchmark::State& state) {
    const ActuatorModel& truth = zigzag();
    CalibrationProblem prob;
    for (int i = 0; i <= 10; ++i) {
        const Pressure p = truth.transition_pressure + kilopascals(10.0 * i);
        prob.observations.push_back({p, pressure_to_angle(p, truth), Branch::Up});
    }
    ActuatorModel start = truth;
    start.shear_modulus = 1_MPa;
    start.transition_pressure = 50_kPa;
    for (auto _ : state) benchmark::DoNotOptimize(fit_pressure_angle(prob, start));
}
BENCHMARK(BM_FitPressureAngle)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
