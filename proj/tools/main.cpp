#include "vtc/cli.hpp"

int main(int argc, char** argv) { return vtc::cli::run(argc, argv); }
