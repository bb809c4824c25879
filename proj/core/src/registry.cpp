#include <qtheta/registry.hpp>

#include <algorithm>
#include <mutex>

#include <qtheta/errors.hpp>

namespace qtheta {

namespace detail {
struct EmbeddedSource {
    std::string_view name;
    std::string_view text;
};
// Generated from core/registry/*.qid at build time.
extern const EmbeddedSource registry_sources[];
extern const std::size_t registry_source_count;
} // namespace detail

namespace {

const std::vector<RegistryEntry> &corpus()
{
    static const std::vector<RegistryEntry> entries = [] {
        std::vector<RegistryEntry> out;
        for (std::size_t i = 0; i < detail::registry_source_count; ++i) {
            const auto &src = detail::registry_sources[i];
            RegistryEntry e;
            try {
                e.doc = parse(src.text);
            } catch (const error &ex) {
                throw error("registry file " + std::string(src.name) + ": " + ex.what());
            }
            e.id = e.doc.id;
            e.paper_label = e.doc.label;
            e.category = e.doc.category;
            e.source = std::string(src.text);
            out.push_back(std::move(e));
        }
        std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i].id == out[i - 1].id) throw error("duplicate registry id " + out[i].id);
        }
        return out;
    }();
    return entries;
}

} // namespace

std::string_view registry_version() { return "1.0.0"; }

std::vector<RegistryEntry> list_entries(const std::optional<std::string> &category)
{
    std::vector<RegistryEntry> out;
    for (const auto &e : corpus()) {
        if (!category || e.category == *category) out.push_back(e);
    }
    return out;
}

const RegistryEntry &get_entry(std::string_view id)
{
    for (const auto &e : corpus()) {
        if (e.id == id) return e;
    }
    throw not_found_error("no registry entry '" + std::string(id) + "'");
}

} // namespace qtheta
