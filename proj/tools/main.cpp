#include "cli_app.hpp"

int main(int argc, char** argv) { return ptw::cli::run_main(argc, argv); }
