#include <iostream>

#include "common.hpp"
#include "panogaze/frame.hpp"
#include "panogaze/motion.hpp"
#include "panogaze/parallel.hpp"
#include "panogaze/quality.hpp"
#include "panogaze/roi.hpp"
#include "panogaze/taxonomy.hpp"

namespace panogaze::cli {

namespace {

taxonomy::TaxonomyVector measure_video(const fs::path& video_dir, int face_size) {
    taxonomy::TaxonomyVector v;
    v.video_id = video_dir.filename().string();

    const auto ref_files = list_pgm_files(video_dir / "ref");
    const auto test_files = list_pgm_files(video_dir / "test");
    if (ref_files.empty()) throw std::runtime_error("no PGM frames under ref/");
    if (test_files.size() != ref_files.size())
        throw std::runtime_error("ref/ and test/ must hold the same number of frames");

    std::vector<FrameGray> refs, tests;
    refs.reserve(ref_files.size());
    tests.reserve(test_files.size());
    for (const auto& f : ref_files) refs.push_back(load_pgm(f));
    for (const auto& f : test_files) tests.push_back(load_pgm(f));

    v.quality_db = taxonomy::video_quality(refs, tests);
    v.motion_mag = taxonomy::video_motion_magnitude(refs, face_size);

    FrameGray saliency;
    if (fs::exists(video_dir / "saliency.pgm"))
        saliency = load_pgm(video_dir / "saliency.pgm");
    else if (fs::exists(video_dir / "saliency.csv"))
        saliency = load_csv_matrix(video_dir / "saliency.csv");
    else
        throw std::runtime_error("missing saliency.pgm / saliency.csv");
    v.roi_sd = taxonomy::roi_dispersion(taxonomy::extract_rois(saliency));
    return v;
}

} // namespace

int run_taxonomy(const TaxonomyOptions& opt) {
    const auto video_dirs = sorted_subdirectories(opt.input);
    if (video_dirs.empty()) {
        std::cerr << "taxonomy: no video directories under " << opt.input.string() << "\n";
        return 2;
    }

    try {
        fs::create_directories(opt.out);

        struct Slot {
            bool ok = false;
            taxonomy::TaxonomyVector vec;
            std::string error;
        };
        std::vector<Slot> slots(video_dirs.size());
        parallel_for(video_dirs.size(), opt.jobs, [&](std::size_t i) {
            try {
                slots[i].vec = measure_video(video_dirs[i], opt.face_size);
                slots[i].ok = true;
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        });

        std::vector<taxonomy::TaxonomyVector> measured;
        std::vector<std::pair<std::string, std::string>> errors;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].ok)
                measured.push_back(slots[i].vec);
            else
                errors.emplace_back(video_dirs[i].filename().string(), slots[i].error);
        }

        if (measured.empty()) {
            write_file(opt.out / "errors.csv", errors_csv(errors));
            std::cerr << "taxonomy: every video failed; see errors.csv\n";
            return 2;
        }

        if (measured.size() == 1) {
            // single-video corpora have no spread to normalize against
            measured[0].normalized = taxonomy::NormalizedTriple{0.5, 0.5, 0.5};
        } else {
            measured = taxonomy::normalize_corpus(std::move(measured));
        }

        std::vector<taxonomy::TaxonomyRow> rows;
        rows.reserve(measured.size());
        for (const auto& vec : measured)
            rows.push_back({vec, taxonomy::classify_video(*vec.normalized, opt.motion_cuts,
                                                          opt.roi_cuts)});
        write_file(opt.out / "taxonomy.csv", taxonomy::taxonomy_report_csv(rows));

        if (!errors.empty()) write_file(opt.out / "errors.csv", errors_csv(errors));
        std::cout << "taxonomy: " << measured.size() << " video(s) measured, " << errors.size()
                  << " error(s)\n";
        return errors.empty() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "taxonomy: " << e.what() << "\n";
        return 2;
    }
}

} // namespace panogaze::cli
