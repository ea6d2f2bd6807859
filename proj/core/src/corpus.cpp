#include "panogaze/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <unordered_map>
#include <unordered_set>

#include "panogaze/csv.hpp"

namespace panogaze::data {

namespace {

double wrap_unit(double x) {
    double w = std::fmod(x, 1.0);
    if (w < 0.0) w += 1.0;
    if (w >= 1.0) w = 0.0;
    return w;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Shared line pump: header check then per-row callback.
template <typename Fn>
void for_each_row(std::istream& in, const char* header, std::size_t fields, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw csv::CsvError("empty stream", 1);
    ++lineno;
    if (strip_cr(line) != header)
        throw csv::CsvError(std::string("expected header '") + header + "'", lineno);
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cols = csv::split_line(line);
        if (cols.size() != fields)
            throw csv::CsvError("expected " + std::to_string(fields) + " fields, got " +
                                    std::to_string(cols.size()),
                                lineno);
        fn(cols, lineno);
    }
}

} // namespace

std::vector<VideoEntry> parse_videos_csv(std::istream& in) {
    std::vector<VideoEntry> out;
    std::unordered_set<std::string> seen;
    for_each_row(in, kVideosHeader, 6, [&](const std::vector<std::string>& c, std::size_t ln) {
        VideoEntry v;
        v.id = c[0];
        if (!seen.insert(v.id).second)
            throw csv::CsvError("duplicate video id '" + v.id + "'", ln);
        v.url = c[1];
        v.content = c[2];
        try {
            v.motion_cell = taxonomy::motion_class_from_string(c[3]);
            v.roi_cell = taxonomy::roi_class_from_string(c[4]);
        } catch (const std::invalid_argument& e) {
            throw csv::CsvError(e.what(), ln);
        }
        v.duration_s = csv::parse_double(c[5], ln);
        out.push_back(std::move(v));
    });
    return out;
}

std::vector<UserEntry> parse_users_csv(std::istream& in) {
    std::vector<UserEntry> out;
    for_each_row(in, kUsersHeader, 6, [&](const std::vector<std::string>& c, std::size_t) {
        out.push_back(UserEntry{c[0], c[1], c[2], c[3], c[4], c[5]});
    });
    return out;
}

std::string serialize_videos_csv(const std::vector<VideoEntry>& videos) {
    std::string out = kVideosHeader;
    out.push_back('\n');
    for (const auto& v : videos) {
        out += csv::quote_field(v.id);
        out.push_back(',');
        out += csv::quote_field(v.url);
        out.push_back(',');
        out += csv::quote_field(v.content);
        out.push_back(',');
        out += to_string(v.motion_cell);
        out.push_back(',');
        out += to_string(v.roi_cell);
        out.push_back(',');
        csv::append_fixed(out, v.duration_s, 3);
        out.push_back('\n');
    }
    return out;
}

std::string serialize_users_csv(const std::vector<UserEntry>& users) {
    std::string out = kUsersHeader;
    out.push_back('\n');
    for (const auto& u : users) {
        out += csv::quote_field(u.id);
        out.push_back(',');
        out += csv::quote_field(u.gender);
        out.push_back(',');
        out += csv::quote_field(u.age_band);
        out.push_back(',');
        out += csv::quote_field(u.mobile_vr_exp);
        out.push_back(',');
        out += csv::quote_field(u.room_vr_exp);
        out.push_back(',');
        out += csv::quote_field(u.video360_exp);
        out.push_back('\n');
    }
    return out;
}

std::vector<ObjectTrack> parse_object_tracks(std::istream& in) {
    std::vector<ObjectTrack> out;
    std::unordered_map<std::string, std::size_t> index;
    for_each_row(in, kObjectTracksHeader, 4, [&](const std::vector<std::string>& c, std::size_t ln) {
        const auto [it, inserted] = index.try_emplace(c[0], out.size());
        if (inserted) out.push_back(ObjectTrack{c[0], {}});
        ObjectTrack& track = out[it->second];
        TimedPoint tp;
        tp.t = csv::parse_double(c[1], ln);
        tp.p.x = csv::parse_double(c[2], ln);
        tp.p.y = csv::parse_double(c[3], ln);
        if (!track.positions.empty() && tp.t <= track.positions.back().t)
            throw csv::CsvError("non-increasing timestamp for object '" + c[0] + "'", ln);
        track.positions.push_back(tp);
    });
    return out;
}

std::string serialize_object_tracks(const std::vector<ObjectTrack>& tracks) {
    std::string out = kObjectTracksHeader;
    out.push_back('\n');
    for (const auto& track : tracks) {
        for (const auto& tp : track.positions) {
            out += csv::quote_field(track.object_id);
            out.push_back(',');
            csv::append_fixed(out, tp.t, 6);
            out.push_back(',');
            csv::append_fixed(out, tp.p.x, 9);
            out.push_back(',');
            csv::append_fixed(out, tp.p.y, 9);
            out.push_back('\n');
        }
    }
    return out;
}

geo::NormalizedPoint track_position_at(const ObjectTrack& track, double t) {
    if (track.positions.empty())
        throw std::invalid_argument("track_position_at: empty track");
    const auto& ps = track.positions;
    if (t <= ps.front().t) return ps.front().p;
    if (t >= ps.back().t) return ps.back().p;
    auto hi = std::upper_bound(ps.begin(), ps.end(), t,
                               [](double value, const TimedPoint& tp) { return value < tp.t; });
    const auto& b = *hi;
    const auto& a = *(hi - 1);
    const double alpha = (t - a.t) / (b.t - a.t);
    geo::NormalizedPoint p;
    p.x = wrap_unit(a.p.x + alpha * geo::wraparound_dx(a.p.x, b.p.x));
    p.y = a.p.y + alpha * (b.p.y - a.p.y);
    return p;
}

} // namespace panogaze::data
