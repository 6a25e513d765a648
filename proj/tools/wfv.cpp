#include "wfv/cli/app.hpp"

int main(int argc, char** argv) { return wfv::cli::run(argc, argv); }
