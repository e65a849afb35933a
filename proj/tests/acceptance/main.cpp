#include <iostream>

#include "dcsharp/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& c : dcsharp::acceptance::criteria()) {
    const auto r = dcsharp::acceptance::run(c);
    std::cout << dcsharp::acceptance::format(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
