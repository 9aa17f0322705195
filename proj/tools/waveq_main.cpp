#include "cli.hpp"

int main(int argc, char** argv) { return waveq::cli::run(argc, argv); }
