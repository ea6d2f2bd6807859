#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "panogaze/geo.hpp"
#include "panogaze/taxonomy.hpp"

namespace panogaze::data {

struct VideoEntry {
    std::string id;
    std::string url;
    std::string content;
    taxonomy::MotionClass motion_cell = taxonomy::MotionClass::Middle;
    taxonomy::RoiClass roi_cell = taxonomy::RoiClass::Middle;
    double duration_s = 0.0;
};

struct UserEntry {
    std::string id;
    std::string gender;
    std::string age_band;
    std::string mobile_vr_exp;
    std::string room_vr_exp;
    std::string video360_exp;
};

// Corpus metadata stored as the CSV pair videos.csv / users.csv.
struct CorpusManifest {
    std::vector<VideoEntry> videos;
    std::vector<UserEntry> users;
};

inline constexpr const char* kVideosHeader =
    "video_id,url,content,motion_cell,roi_cell,duration_s";
inline constexpr const char* kUsersHeader =
    "user_id,gender,age_band,mobile_vr_exp,room_vr_exp,video360_exp";

// Duplicate video ids and unknown cell labels are CsvErrors.
std::vector<VideoEntry> parse_videos_csv(std::istream& in);
std::vector<UserEntry> parse_users_csv(std::istream& in);
std::string serialize_videos_csv(const std::vector<VideoEntry>& videos);
std::string serialize_users_csv(const std::vector<UserEntry>& users);

struct TimedPoint {
    double t = 0.0;
    geo::NormalizedPoint p;
};

// One detected object's trajectory on the equirectangular image.
struct ObjectTrack {
    std::string object_id;
    std::vector<TimedPoint> positions; // time-ordered
};

inline constexpr const char* kObjectTracksHeader = "object_id,t,x,y";

// Rows `object_id,t,x,y`; rows of one object must be time-ordered. Tracks
// come back in first-appearance order.
std::vector<ObjectTrack> parse_object_tracks(std::istream& in);
std::string serialize_object_tracks(const std::vector<ObjectTrack>& tracks);

// Position at time t: linear interpolation (wraparound-aware in x),
// clamped to the track's ends.
geo::NormalizedPoint track_position_at(const ObjectTrack& track, double t);

} // namespace panogaze::data
