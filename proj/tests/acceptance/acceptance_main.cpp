// placeholder; full acceptance suite lands after the unit layer
#include <cstdio>
int main() {
    std::puts("acceptance suite not yet implemented");
    return 1;
}
