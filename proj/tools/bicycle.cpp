#include <cstdio>

#include "bicycle/bbcode.hpp"

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::printf("bicycle toolkit (placeholder main)\n");
    return 0;
}
