// Compute time-to-level from an external solver's incumbent trace.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "hubo/mip.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Incumbent-trace ingestion (CSV: seconds,objective)"};
  std::string trace_path;
  double e_ref = 0.0;
  app.add_option("--trace", trace_path, "incumbent trace CSV")->required();
  app.add_option("--eref", e_ref, "reference energy level")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto trace = hubo::mip::IncumbentTrace::load(trace_path);
    const auto t = hubo::mip::time_to_reach(trace, e_ref);
    if (t) {
      std::printf("%.10g\n", *t);
    } else {
      std::printf("not-reached\n");
      return 2;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
