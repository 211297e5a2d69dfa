// Generate a hardware-layout HUBO instance and write it as JSON.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hubo/sampler.hpp"
#include "hubo/topology.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Heavy-hex HUBO instance generator"};
  std::string topology = "heavy_hex";
  int rows = 1, cols = 1;
  std::optional<int> crop_to;
  int s2q = 1, s3q = 1, swap_layers = 1;
  std::string distribution = "cauchy";
  double alpha = 2.0;
  std::optional<double> truncation;
  double constant_value = 1.0;
  std::uint64_t seed = 0;
  std::string out = "instance.json";
  std::string layout_out, map_out;

  app.add_option("--topology", topology, "heavy_hex | heron")
      ->check(CLI::IsMember({"heavy_hex", "heron"}));
  app.add_option("--rows", rows, "hexagon cell rows (heavy_hex)");
  app.add_option("--cols", cols, "hexagon cell columns (heavy_hex)");
  app.add_option("--crop", crop_to, "cut a connected patch of this many qubits");
  app.add_option("--s2q", s2q, "two-body sets per round");
  app.add_option("--s3q", s3q, "three-body sets per round");
  app.add_option("--swap-layers", swap_layers, "layout rounds (n)");
  app.add_option("--distribution", distribution, "cauchy | pareto | constant")
      ->check(CLI::IsMember({"cauchy", "pareto", "constant"}));
  app.add_option("--alpha", alpha, "Pareto shape");
  app.add_option("--truncation", truncation, "coefficient bound (rejection)");
  app.add_option("--constant-value", constant_value, "value for constant sampler");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "instance JSON path");
  app.add_option("--layout-out", layout_out, "also write the layout plan");
  app.add_option("--map-out", map_out, "also write the coupling map");
  CLI11_PARSE(app, argc, argv);

  try {
    hubo::CouplingMap map =
        topology == "heron" ? hubo::heavy_hex_heron() : hubo::heavy_hex(rows, cols);
    if (crop_to) map = hubo::crop(map, *crop_to);

    hubo::LayoutParams params;
    params.swap_rounds = swap_layers;
    params.s2q = s2q;
    params.s3q = s3q;
    params.seed = hubo::derive_stream(seed, 17);
    const auto layout = hubo::generate_layout(map, params);
    if (layout.clamped)
      std::fprintf(stderr,
                   "warning: requested more sets than the colouring provides; "
                   "selection clamped\n");

    hubo::CoefficientSampler sampler = [&] {
      if (distribution == "cauchy") return hubo::CoefficientSampler::cauchy(truncation);
      if (distribution == "pareto")
        return hubo::CoefficientSampler::symmetric_pareto(alpha, truncation);
      return hubo::CoefficientSampler::constant(constant_value);
    }();

    const auto inst = hubo::instantiate(layout, sampler, hubo::derive_stream(seed, 18));
    inst.save(out);
    if (!layout_out.empty()) layout.save(layout_out);
    if (!map_out.empty()) map.save(map_out);
    std::printf("wrote %s: N=%d terms=%zu/%zu/%zu\n", out.c_str(), inst.num_vars(),
                inst.linear_terms().size(), inst.quadratic_terms().size(),
                inst.cubic_terms().size());
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
