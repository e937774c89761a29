#ifndef PTW_CLI_APP_HPP
#define PTW_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ptw::cli {

/// Runs the ptw command line: train / encode / scan / synth / report.
/// Informational output goes to `out`; failures print a single
/// machine-parseable line to `err` and return nonzero.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace ptw::cli

#endif
