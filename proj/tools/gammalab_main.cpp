// CLI front end; subcommands are wired in cli_run.
#include <iostream>

int gammalab_cli_run(int argc, char** argv);

int main(int argc, char** argv) { return gammalab_cli_run(argc, argv); }
