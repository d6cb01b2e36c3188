#include "wsone/alphabet.hpp"

#include <algorithm>
#include <bit>

namespace wsone {

Universe::Universe(std::vector<std::string> names)
{
    for (auto& n : names)
        intern(n);
}

Track Universe::intern(std::string_view name)
{
    if (auto t = find(name))
        return *t;
    if (names_.size() >= kMaxTracks)
        throw AlphabetError("too many variables (at most 64 supported)");
    names_.emplace_back(name);
    return static_cast<Track>(names_.size() - 1);
}

std::optional<Track> Universe::find(std::string_view name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<Track>(it - names_.begin());
}

TrackMask Universe::all_tracks() const
{
    return names_.size() >= 64 ? ~TrackMask{0} : (TrackMask{1} << names_.size()) - 1;
}

std::string Universe::fresh_name(std::string_view base) const
{
    for (std::size_t k = 1;; ++k) {
        std::string candidate = std::string(base) + "_" + std::to_string(k);
        if (!find(candidate))
            return candidate;
    }
}

Cube Cube::with_track(Track t, bool v) const
{
    const TrackMask bit = track_bit(t);
    return {care_ | bit, v ? (value_ | bit) : (value_ & ~bit)};
}

std::optional<Cube> Cube::constrain(Track t, bool v) const
{
    const int cur = track(t);
    if (cur >= 0 && cur != static_cast<int>(v))
        return std::nullopt;
    return with_track(t, v);
}

std::size_t Cube::free_tracks(std::size_t width) const
{
    const TrackMask all = width >= 64 ? ~TrackMask{0} : (TrackMask{1} << width) - 1;
    return static_cast<std::size_t>(std::popcount(all & ~care_));
}

Cube zero_symbol(const Universe& u) { return {u.all_tracks(), 0}; }

std::vector<Cube> enumerate_tracks(const Cube& c, TrackMask tracks, std::size_t bound)
{
    std::vector<Track> free;
    for (TrackMask m = tracks & ~c.care(); m; m &= m - 1)
        free.push_back(static_cast<Track>(std::countr_zero(m)));
    if (free.size() > bound)
        throw AlphabetError("cube has " + std::to_string(free.size()) +
                            " don't-care tracks, above the enumeration bound of " +
                            std::to_string(bound) +
                            "; quotient by the cube as a whole instead of per symbol");
    const std::size_t m = free.size();
    std::vector<Cube> out;
    out.reserve(std::size_t{1} << m);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k) {
        Cube s = c;
        for (std::size_t i = 0; i < m; ++i)
            s = s.with_track(free[i], (k >> (m - 1 - i)) & 1U);
        out.push_back(s);
    }
    return out;
}

std::vector<Cube> enumerate(const Cube& c, std::size_t width, std::size_t bound)
{
    const TrackMask all = width >= 64 ? ~TrackMask{0} : (TrackMask{1} << width) - 1;
    return enumerate_tracks(c, all, bound);
}

std::string render(const Cube& c, const Universe& u)
{
    std::string out;
    for (Track t = 0; t < u.size(); ++t) {
        if (!out.empty())
            out += ' ';
        out += u.name(t);
        out += ':';
        const int v = c.track(t);
        out += v < 0 ? '?' : static_cast<char>('0' + v);
    }
    return out;
}

std::string render_compact(const Cube& c, std::size_t width)
{
    std::string out;
    for (Track t = 0; t < width; ++t) {
        const int v = c.track(t);
        out += v < 0 ? '?' : static_cast<char>('0' + v);
    }
    return out;
}

Cube parse_compact(std::string_view text)
{
    if (text.size() > kMaxTracks)
        throw AlphabetError("cube wider than 64 tracks");
    Cube c;
    for (Track t = 0; t < text.size(); ++t) {
        switch (text[t]) {
        case '0': c = c.with_track(t, false); break;
        case '1': c = c.with_track(t, true); break;
        case '?': break;
        default: throw AlphabetError("bad cube character '" + std::string(1, text[t]) + "'");
        }
    }
    return c;
}

} // namespace wsone
