#include "tcfp/cli.hpp"

int main(int argc, char** argv) { return tcfp::cli::run(argc, argv); }
