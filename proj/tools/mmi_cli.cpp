// mmi: mixed multiplier ideals, jumping walls and constancy regions from a
// resolution dual graph.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmi/cli.hpp"

int main(int argc, char** argv) {
  mmi::cli::RunConfig config;
  CLI::App app{"Mixed multiplier ideals, jumping walls and constancy regions"};
  app.add_option("command", config.command, "canonical | mmi | region | walls | enumerate | jumping-numbers | "
                                            "min-jumping-divisor | verify")
      ->required()
      ->check(CLI::IsMember(mmi::cli::commands()));
  app.add_option("--input", config.input, "input JSON document")->required();
  app.add_option("--box", config.box, "upper-right box corner, e.g. 1,3");
  app.add_option("--lambda", config.lambda, "point, e.g. 1/6,1");
  app.add_option("--direction", config.direction, "integer ray direction, e.g. 1,1");
  app.add_option("--upto", config.upto, "upper bound for jumping numbers");
  app.add_option("--ideal", config.ideal, "ideal name");
  app.add_option("--format", config.format, "json | svg | text")->check(CLI::IsMember({"json", "svg", "text"}));
  app.add_option("--output", config.output, "write the report here instead of stdout");
  app.add_option("--max-steps", config.max_steps, "stop enumeration after this many steps");
  app.add_flag("--affine-walls", config.affine_walls, "add affine components (k = 0) as region walls");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mmi::cli::ValidationFailure;
  }
  return mmi::cli::run(config, std::cout, std::cerr);
}
