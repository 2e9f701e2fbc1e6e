#include <cstdio>

int main() {
    std::puts("spart: CLI under construction");
    return 0;
}
