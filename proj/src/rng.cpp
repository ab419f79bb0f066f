#include "fspde/rng.hpp"

#include <cmath>

namespace fspde {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ (0x632be59bd9b4e019ULL + a));
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + b));
    return s;
}

double NormalStream::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double c = std::cos(2.0 * M_PI * u2);
    const double s = std::sin(2.0 * M_PI * u2);
    spare_ = r * s;
    have_spare_ = true;
    return r * c;
}

}  // namespace fspde
