#include "tbsg/kernels.hpp"

#include <cstdlib>
#include <string>

namespace tbsg::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const auto* t = avx2_kernels()) out.push_back(t);
    if (const auto* t = neon_kernels()) out.push_back(t);
    return out;
}

namespace {

const KernelTable& select() {
    if (const char* env = std::getenv("TBSG_KERNELS")) {
        if (std::string(env) == "scalar") return scalar_kernels();
    }
    if (const auto* t = avx2_kernels()) return *t;
    if (const auto* t = neon_kernels()) return *t;
    return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace tbsg::kernels
