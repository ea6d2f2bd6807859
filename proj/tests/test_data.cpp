#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "panogaze/corpus.hpp"
#include "panogaze/csv.hpp"
#include "panogaze/trace.hpp"

using namespace panogaze;
using namespace panogaze::data;

namespace {

Trace make_uniform_trace(double freq, std::size_t n) {
    Trace tr;
    tr.video_id = "v";
    tr.user_id = "u";
    tr.freq_hz = freq;
    for (std::size_t i = 0; i < n; ++i) {
        Sample s;
        s.t = static_cast<double>(i) / freq;
        s.head = {0.25, 0.5};
        s.gaze = {0.75, 0.5};
        tr.samples.push_back(s);
    }
    return tr;
}

} // namespace

TEST_CASE("canonical rows parse field for field") {
    std::istringstream in("t,head_x,head_y,gaze_x,gaze_y\n"
                          "0.0,0.5,0.5,0.5,0.5\n"
                          "0.008333,0.51,0.5,0.52,0.5\n");
    const Trace tr = parse_trace(in, TraceFormat::CanonicalCsv);
    REQUIRE(tr.samples.size() == 2);
    CHECK(tr.samples[0].t == 0.0);
    CHECK(tr.samples[0].head.x == 0.5);
    CHECK(tr.samples[0].gaze.y == 0.5);
    CHECK(tr.samples[1].head.x == 0.51);
    CHECK(tr.freq_hz == doctest::Approx(1.0 / 0.008333).epsilon(1e-6));
}

TEST_CASE("raw quaternion rows run through the geometry pipeline") {
    std::istringstream in("t,qx,qy,qz,qw,gx,gy,gz\n"
                          "0.0,0,0,0,1,0,0,1\n"
                          "0.01,0,0,0,1,0,0,2\n");
    const Trace tr = parse_trace(in, TraceFormat::RawQuaternionLog);
    REQUIRE(tr.samples.size() == 2);
    CHECK(tr.samples[0].head.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tr.samples[0].head.y == doctest::Approx(0.5).epsilon(1e-12));
    // non-unit gaze vectors are normalized by the adapter
    CHECK(tr.samples[1].gaze.x == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_trace(empty, TraceFormat::CanonicalCsv), csv::CsvError);

    std::istringstream bad_header("time,hx,hy,gx,gy\n0,0,0,0,0\n");
    CHECK_THROWS_AS(parse_trace(bad_header, TraceFormat::CanonicalCsv), csv::CsvError);

    std::istringstream bad_field("t,head_x,head_y,gaze_x,gaze_y\n0.0,0.5,oops,0.5,0.5\n");
    try {
        parse_trace(bad_field, TraceFormat::CanonicalCsv);
        FAIL("expected CsvError");
    } catch (const csv::CsvError& e) {
        CHECK(e.line == 2);
    }

    std::istringstream out_of_order("t,head_x,head_y,gaze_x,gaze_y\n"
                                    "0.1,0.5,0.5,0.5,0.5\n"
                                    "0.05,0.5,0.5,0.5,0.5\n");
    try {
        parse_trace(out_of_order, TraceFormat::CanonicalCsv);
        FAIL("expected CsvError");
    } catch (const csv::CsvError& e) {
        CHECK(e.line == 3);
    }

    std::istringstream degenerate_gaze("t,qx,qy,qz,qw,gx,gy,gz\n0.0,0,0,0,1,0,0,0\n");
    CHECK_THROWS_AS(parse_trace(degenerate_gaze, TraceFormat::RawQuaternionLog), csv::CsvError);
}

TEST_CASE("serialize -> parse -> serialize is byte-stable") {
    const Trace tr = synthesize_trace({123, 2.0, 120.0, 7, 0.004});
    const std::string first = serialize_trace(tr);
    std::istringstream in(first);
    const Trace parsed = parse_trace(in, TraceFormat::CanonicalCsv);
    CHECK(serialize_trace(parsed) == first);
}

TEST_CASE("resampling at the native rate is the identity") {
    const Trace tr = make_uniform_trace(120.0, 240);
    const Trace rs = resample_trace(tr, 120.0);
    REQUIRE(rs.samples.size() == tr.samples.size());
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        CHECK(rs.samples[i].t == doctest::Approx(tr.samples[i].t).epsilon(1e-12));
        CHECK(rs.samples[i].head.x == doctest::Approx(tr.samples[i].head.x).epsilon(1e-12));
    }
    CHECK(rs.samples.front().head.x == tr.samples.front().head.x);
    CHECK(rs.samples.back().head.x == tr.samples.back().head.x);
}

TEST_CASE("resampling interpolates linearly, wrapping across the seam") {
    Trace tr;
    tr.freq_hz = 1.0;
    tr.samples = {{0.0, {0.0, 0.2}, {0.99, 0.5}}, {1.0, {0.1, 0.4}, {0.01, 0.5}}};
    const Trace rs = resample_trace(tr, 2.0);
    REQUIRE(rs.samples.size() == 3);
    CHECK(rs.samples[1].head.x == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rs.samples[1].head.y == doctest::Approx(0.3).epsilon(1e-12));
    // 0.99 -> 0.01 crosses the seam; the midpoint is 0.0, not 0.5
    CHECK(rs.samples[1].gaze.x == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(resample_trace(tr, 0.0), std::invalid_argument);
    Trace tiny;
    tiny.samples = {{0.0, {0, 0}, {0, 0}}};
    CHECK_THROWS_AS(resample_trace(tiny, 10.0), std::invalid_argument);
}

TEST_CASE("synthesis honors the planted lag exactly") {
    SUBCASE("zero lag, zero noise collapses head onto gaze") {
        const Trace tr = synthesize_trace({9, 5.0, 120.0, 0, 0.0});
        for (const Sample& s : tr.samples) {
            CHECK(s.head.x == s.gaze.x);
            CHECK(s.head.y == s.gaze.y);
        }
    }
    SUBCASE("lag 14 with zero noise is a perfect shift") {
        const long lag = 14;
        const Trace tr = synthesize_trace({10, 5.0, 120.0, lag, 0.0});
        double mse = 0.0;
        for (std::size_t i = static_cast<std::size_t>(lag); i < tr.samples.size(); ++i) {
            const double dx = tr.samples[i].head.x - tr.samples[i - lag].gaze.x;
            const double dy = tr.samples[i].head.y - tr.samples[i - lag].gaze.y;
            mse += dx * dx + dy * dy;
        }
        CHECK(mse == 0.0);
    }
    SUBCASE("same seed twice is bit-identical") {
        const Trace a = synthesize_trace({77, 3.0, 120.0, 14, 0.01});
        const Trace b = synthesize_trace({77, 3.0, 120.0, 14, 0.01});
        CHECK(serialize_trace(a) == serialize_trace(b));
        const Trace c = synthesize_trace({78, 3.0, 120.0, 14, 0.01});
        CHECK(serialize_trace(a) != serialize_trace(c));
    }
    SUBCASE("synthesized traces validate clean") {
        const Trace tr = synthesize_trace({5, 10.0, 120.0, 14, 0.01});
        CHECK(validate_trace(tr).empty());
    }
    SUBCASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(synthesize_trace({0, 0.0, 120.0, 0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(synthesize_trace({0, 1.0, 120.0, -1, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(synthesize_trace({0, 0.1, 120.0, 14, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("validate_trace reports ranges, ordering and gaps") {
    Trace tr = make_uniform_trace(120.0, 240);
    CHECK(validate_trace(tr).empty());

    tr.samples[3].head.y = 1.5;
    auto violations = validate_trace(tr);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::Range);
    CHECK(violations[0].sample_index == 3);

    tr = make_uniform_trace(120.0, 240);
    for (std::size_t i = 120; i < tr.samples.size(); ++i) tr.samples[i].t += 1.0; // 1 s hole
    violations = validate_trace(tr);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::Gap);
    CHECK(violations[0].sample_index == 120);
}

TEST_CASE("manifest CSVs round-trip and validate") {
    std::vector<VideoEntry> videos = {
        {"v1", "RAYdWuPnp-M", "Stage, with a comma", taxonomy::MotionClass::Motionless,
         taxonomy::RoiClass::Disperse, 60.0},
        {"v2", "VpwIoyr0RMg", "Chase", taxonomy::MotionClass::Middle,
         taxonomy::RoiClass::Intensive, 60.0},
    };
    const std::string text = serialize_videos_csv(videos);
    std::istringstream in(text);
    const auto parsed = parse_videos_csv(in);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].content == "Stage, with a comma");
    CHECK(parsed[1].roi_cell == taxonomy::RoiClass::Intensive);
    CHECK(serialize_videos_csv(parsed) == text);

    std::istringstream dup("video_id,url,content,motion_cell,roi_cell,duration_s\n"
                           "v1,a,b,Middle,Middle,10\nv1,c,d,Middle,Middle,10\n");
    CHECK_THROWS_AS(parse_videos_csv(dup), csv::CsvError);

    std::istringstream badcell("video_id,url,content,motion_cell,roi_cell,duration_s\n"
                               "v1,a,b,Fast,Middle,10\n");
    CHECK_THROWS_AS(parse_videos_csv(badcell), csv::CsvError);

    std::vector<UserEntry> users = {{"u1", "Female", "18-21", "1-5", "Never", "1-5"}};
    std::istringstream uin(serialize_users_csv(users));
    const auto parsed_users = parse_users_csv(uin);
    REQUIRE(parsed_users.size() == 1);
    CHECK(parsed_users[0].age_band == "18-21");
}

TEST_CASE("object tracks parse in appearance order and interpolate") {
    std::istringstream in("object_id,t,x,y\n"
                          "ball,0.0,0.98,0.5\n"
                          "cart,0.0,0.2,0.2\n"
                          "ball,1.0,0.02,0.5\n");
    const auto tracks = parse_object_tracks(in);
    REQUIRE(tracks.size() == 2);
    CHECK(tracks[0].object_id == "ball");
    REQUIRE(tracks[0].positions.size() == 2);

    // interpolation crosses the seam the short way
    const auto mid = track_position_at(tracks[0], 0.5);
    CHECK(mid.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mid.y == doctest::Approx(0.5).epsilon(1e-12));
    // clamped at the ends
    CHECK(track_position_at(tracks[0], -5.0).x == doctest::Approx(0.98));
    CHECK(track_position_at(tracks[0], 5.0).x == doctest::Approx(0.02));

    std::istringstream unordered("object_id,t,x,y\nball,1.0,0,0\nball,0.5,0,0\n");
    CHECK_THROWS_AS(parse_object_tracks(unordered), csv::CsvError);
}
