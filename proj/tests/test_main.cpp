#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "prec/real.hpp"

int main(int argc, char** argv) {
  kam::set_default_precision(267);
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
