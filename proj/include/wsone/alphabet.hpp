// alphabet.hpp -- multi-track symbols over a variable universe and their
// cube (don't-care) representation.

#ifndef WSONE_ALPHABET_HPP
#define WSONE_ALPHABET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsone {

using Track = std::uint32_t;
using TrackMask = std::uint64_t;

inline constexpr std::size_t kMaxTracks = 64;

/// Ordered list of second-order variables; the position of a name is its
/// track index.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> names);

    /// Returns the track of `name`, adding it at the end if absent.
    Track intern(std::string_view name);
    std::optional<Track> find(std::string_view name) const;

    const std::string& name(Track t) const { return names_.at(t); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }

    /// Mask with one bit per track of the universe.
    TrackMask all_tracks() const;

    /// A name of the form `<base>_<k>` not yet present.
    std::string fresh_name(std::string_view base) const;

    bool operator==(const Universe&) const = default;

private:
    std::vector<std::string> names_;
};

struct AlphabetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A set of symbols given by a partial assignment of tracks. Tracks outside
/// `care` are don't-care ('?'); `value` only has bits inside `care`.
class Cube {
public:
    constexpr Cube() = default;
    constexpr Cube(TrackMask care, TrackMask value) : care_(care), value_(value & care) {}

    static constexpr Cube full() { return {}; }

    constexpr TrackMask care() const { return care_; }
    constexpr TrackMask value() const { return value_; }

    /// 0, 1, or -1 for a don't-care track.
    constexpr int track(Track t) const
    {
        const TrackMask bit = TrackMask{1} << t;
        if (!(care_ & bit))
            return -1;
        return (value_ & bit) ? 1 : 0;
    }
    Cube with_track(Track t, bool v) const;
    /// nullopt if `t` already carries the opposite value.
    std::optional<Cube> constrain(Track t, bool v) const;

    bool intersects(const Cube& o) const { return ((value_ ^ o.value_) & care_ & o.care_) == 0; }
    /// Requires intersects(o).
    Cube meet(const Cube& o) const { return {care_ | o.care_, value_ | o.value_}; }
    /// Denotation of `o` contained in denotation of this.
    bool contains(const Cube& o) const
    {
        return (care_ & ~o.care_) == 0 && ((value_ ^ o.value_) & care_) == 0;
    }

    /// Number of don't-care tracks among the first `width` tracks.
    std::size_t free_tracks(std::size_t width) const;
    bool is_concrete(std::size_t width) const { return free_tracks(width) == 0; }

    auto operator<=>(const Cube&) const = default;

private:
    TrackMask care_ = 0;
    TrackMask value_ = 0;
};

using SymbolSet = std::vector<Cube>;

/// The symbol mapping every variable to 0.
Cube zero_symbol(const Universe& u);

/// Sets the tracks in `vars` to don't-care.
inline Cube project(const Cube& c, TrackMask vars) { return {c.care() & ~vars, c.value() & ~vars}; }

inline constexpr std::size_t kDefaultEnumerateBound = 20;

/// All concrete symbols of `c` over the first `width` tracks, in
/// lexicographic order (track 0 most significant, 0 before 1).
std::vector<Cube> enumerate(const Cube& c, std::size_t width,
                            std::size_t bound = kDefaultEnumerateBound);

/// Concrete symbols obtained by fixing only the don't-care tracks in `tracks`.
std::vector<Cube> enumerate_tracks(const Cube& c, TrackMask tracks,
                                   std::size_t bound = kDefaultEnumerateBound);

/// `X:0 Y:? ...`
std::string render(const Cube& c, const Universe& u);
/// One character per track: `0?1`.
std::string render_compact(const Cube& c, std::size_t width);
Cube parse_compact(std::string_view text);

inline TrackMask track_bit(Track t) { return TrackMask{1} << t; }

} // namespace wsone

template <>
struct std::hash<wsone::Cube> {
    std::size_t operator()(const wsone::Cube& c) const noexcept
    {
        return std::hash<std::uint64_t>{}(c.care() * 0x9E3779B97F4A7C15ULL ^ c.value());
    }
};

#endif
