#include "pedmdp/cli.hpp"

int main(int argc, char** argv) {
    return pedmdp::run_cli({argv + 1, argv + argc});
}
