#ifndef FRONTSPEED_CONFIG_HPP
#define FRONTSPEED_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "frontspeed/fields.hpp"
#include "frontspeed/grids.hpp"
#include "frontspeed/reactions.hpp"

namespace frontspeed {

/// Flat INI-style config: [section] headers, key = value lines, '#' comments.
/// Lookups mark keys as consumed so a run can reject keys it never read.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text, const std::string& name = "<config>");

    bool has_section(const std::string& sec) const;
    bool has(const std::string& sec, const std::string& key) const;

    std::string get_string(const std::string& sec, const std::string& key);
    std::string get_string(const std::string& sec, const std::string& key,
                           const std::string& fallback);
    double get_double(const std::string& sec, const std::string& key);
    double get_double(const std::string& sec, const std::string& key, double fallback);
    int get_int(const std::string& sec, const std::string& key, int fallback);
    bool get_bool(const std::string& sec, const std::string& key, bool fallback);
    std::vector<double> get_list(const std::string& sec, const std::string& key);

    /// "section.key (line N)" for every key never consumed.
    std::vector<std::string> unused_keys() const;
    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };
    std::string name_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    const Entry* find(const std::string& sec, const std::string& key) const;
    const Entry& require(const std::string& sec, const std::string& key);
};

// Builders for the shared config blocks.
FieldSpec field_from_config(Config& cfg);
ReactionSpec reaction_from_config(Config& cfg);
Eigen::Vector2d direction_from_config(Config& cfg);  // unnormalized, as written
CellGrid cell_grid_from_config(Config& cfg);
ChannelGrid channel_from_config(Config& cfg);

}  // namespace frontspeed

#endif
