#include <cstdio>

int main() {
  std::fputs("forge: command-line driver not wired up yet\n", stderr);
  return 2;
}
