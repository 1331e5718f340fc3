#include "rsrm/cli.hpp"

int main(int argc, char** argv) { return rsrm::run_cli(argc, argv); }
