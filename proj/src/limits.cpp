#include "slashtree/limits.hpp"

#include "slashtree/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

namespace slashtree {

namespace {

void override_from(const char* var, std::size_t& field) {
    const char* raw = std::getenv(var);
    if (raw == nullptr || *raw == '\0') return;
    std::string_view text(raw);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw SchemaError(std::string(var) + " must be a positive integer, got '" + raw + "'");
    }
    field = value;
}

}  // namespace

Limits Limits::from_environment() {
    Limits l;
    override_from("SLASHTREE_MAX_EDGES", l.max_edges);
    override_from("SLASHTREE_MAX_CYCLES", l.max_cycles);
    override_from("SLASHTREE_MAX_PATHS", l.max_paths);
    override_from("SLASHTREE_MAX_ORACLE_VERTICES", l.max_oracle_vertices);
    return l;
}

}  // namespace slashtree
