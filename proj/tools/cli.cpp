#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "framecast/gallery.hpp"
#include "framecast/io.hpp"
#include "framecast/pipeline.hpp"

namespace framecast::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
    std::string gallery, dsl, csv;
    std::string samples;
    std::string out = ".";
    std::string format = "csv";
    double tol_kappa = kTolKappa;
    double tol_limit = 1e-3;
    double tol_c1 = 1e-2;

    LiftTolerances tolerances() const {
        LiftTolerances t;
        t.kappa = tol_kappa;
        t.limit = tol_limit;
        t.c1 = tol_c1;
        return t;
    }
};

// Failure that maps to an exit code, with a JSON report for stdout.
struct Failure {
    int code;
    std::string message;
    json report;
};

std::vector<std::size_t> parse_samples(const std::string& text) {
    std::vector<std::size_t> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = -1;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
        }
        if (used != item.size() || v < 16) throw Failure{kUsage, "--samples expects integers >= 16", {}};
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

json error_report(std::string_view stage, const std::string& message) {
    return {{"schema", kSchema}, {"status", "error"}, {"stage", stage}, {"message", message}};
}

// Curve input plus its preferred grid size.
struct CurveInput {
    CurveSpec spec;
    std::size_t samples = 0;
};

std::optional<CurveInput> curve_input(const RunConfig& c) {
    if (!c.gallery.empty()) {
        const GalleryEntry* e = nullptr;
        try {
            e = &gallery_entry(c.gallery);
        } catch (const std::out_of_range& ex) {
            throw Failure{kUsage, ex.what(), error_report("input", ex.what())};
        }
        if (e->is_curve()) return CurveInput{e->curve(), e->samples};
        return CurveInput{reconstruct_spec(e->development()), 0};
    }
    if (!c.dsl.empty()) return CurveInput{parse_curve_spec(c.dsl), 0};
    if (!c.csv.empty()) {
        std::ifstream in(c.csv);
        if (!in) throw Failure{kUsage, "cannot open " + c.csv, error_report("input", "cannot open " + c.csv)};
        return CurveInput{read_sampled_curve_csv(in, fs::path(c.csv).filename().string()), 0};
    }
    return std::nullopt;
}

FrameResult run_frame(const CurveInput& in, std::size_t samples, const RunConfig& c) {
    FrameOptions o;
    o.samples = samples ? samples : in.samples;
    o.tol = c.tolerances();
    return frame_curve(in.spec, o);
}

json lift_failure_report(const LiftResult& r) {
    json j = lift_report(r, false);
    j["status"] = "error";
    j["stage"] = "lift";
    return j;
}

std::string failure_message(const LiftResult& r) {
    std::ostringstream os;
    os << "lift " << to_string(r.lift.verdict);
    if (r.lift.failure) {
        os << ": " << r.lift.failure->reason << " at s = " << r.lift.failure->s;
        if (r.lift.failure->mismatch) os << " (mismatch " << *r.lift.failure->mismatch << " rad)";
    }
    return os.str();
}

// Files are staged next to their destination and renamed only after every write succeeded.
class Staged {
public:
    explicit Staged(fs::path dir) : dir_(std::move(dir)) {}
    ~Staged() {
        for (const auto& p : temps_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

    void add(const std::string& name, const std::function<void(std::ostream&)>& write) {
        fs::create_directories(dir_);
        const fs::path tmp = dir_ / (name + ".tmp");
        temps_.push_back(tmp);
        names_.push_back(name);
        std::ofstream os(tmp);
        write(os);
        os.flush();
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
    }

    std::vector<std::string> commit() {
        std::vector<std::string> written;
        for (std::size_t i = 0; i < temps_.size(); ++i) {
            const fs::path dest = dir_ / names_[i];
            fs::rename(temps_[i], dest);
            written.push_back(dest.string());
        }
        temps_.clear();
        return written;
    }

private:
    fs::path dir_;
    std::vector<fs::path> temps_;
    std::vector<std::string> names_;
};

int cmd_frame(const RunConfig& c, std::ostream& out) {
    const auto in = curve_input(c);
    if (!in) throw Failure{kUsage, "frame needs --gallery, --dsl or --csv", {}};
    const auto samples = parse_samples(c.samples);
    const FrameResult r = run_frame(*in, samples.empty() ? 0 : samples.front(), c);
    if (!r.beta) throw Failure{kNotLiftable, failure_message(r.lift), lift_failure_report(r.lift)};

    Staged files(c.out);
    if (c.format == "json") {
        files.add("frame.json", [&](std::ostream& os) {
            json j{{"schema", kSchema},
                   {"curve", curve_metadata(r.curve)},
                   {"frenet", frenet_json(r.frenet)},
                   {"bishop", bishop_json(r.bishop)},
                   {"beta", beta_json(*r.beta)},
                   {"lift", lift_report(r.lift, false)}};
            os << j.dump(1) << '\n';
        });
    } else {
        files.add("frenet.csv", [&](std::ostream& os) { write_frenet_csv(os, r.frenet); });
        files.add("bishop.csv", [&](std::ostream& os) { write_bishop_csv(os, r.bishop); });
        files.add("beta.csv", [&](std::ostream& os) { write_beta_csv(os, *r.beta); });
    }
    const auto written = files.commit();
    out << json{{"schema", kSchema},
                {"status", "ok"},
                {"curve", curve_metadata(r.curve)},
                {"base_index", r.bishop.base_index},
                {"zeros", r.lift.analyses.size()},
                {"files", written}}
               .dump()
        << '\n';
    return kOk;
}

int cmd_lift(const RunConfig& c, std::ostream& out) {
    LiftResult result;
    const GalleryEntry* entry = nullptr;
    if (!c.gallery.empty()) {
        try {
            entry = &gallery_entry(c.gallery);
        } catch (const std::out_of_range& ex) {
            throw Failure{kUsage, ex.what(), error_report("input", ex.what())};
        }
    }
    if (entry && !entry->is_curve()) {
        result = lift_only(entry->development(), c.tolerances());
    } else if (!c.csv.empty()) {
        std::ifstream in(c.csv);
        if (!in) throw Failure{kUsage, "cannot open " + c.csv, error_report("input", "cannot open " + c.csv)};
        result = lift_only(read_development_csv(in), c.tolerances());
    } else {
        const auto in = curve_input(c);
        if (!in) throw Failure{kUsage, "lift needs --gallery, --dsl or --csv", {}};
        const auto samples = parse_samples(c.samples);
        result = run_frame(*in, samples.empty() ? 0 : samples.front(), c).lift;
    }
    if (!result.lift.liftable())
        throw Failure{kNotLiftable, failure_message(result), lift_failure_report(result)};

    Staged files(c.out);
    const bool as_json = c.format == "json";
    files.add("lift.json", [&](std::ostream& os) { os << lift_report(result, as_json).dump(1) << '\n'; });
    if (!as_json) files.add("lift.csv", [&](std::ostream& os) { write_lift_csv(os, result.lift); });
    const auto written = files.commit();
    json summary = lift_report(result, false);
    summary["status"] = "ok";
    summary["files"] = written;
    out << summary.dump() << '\n';
    return kOk;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
    const auto in = curve_input(c);
    if (!in) throw Failure{kUsage, "check needs --gallery, --dsl or --csv", {}};
    auto samples = parse_samples(c.samples);
    if (samples.size() > 2) throw Failure{kUsage, "--samples takes at most two grid sizes", {}};
    if (samples.empty()) samples.push_back(in->samples);
    json grids = json::array();
    std::vector<BetaResiduals> res;
    std::size_t first_n = 0;
    for (std::size_t k = 0; k < 2; ++k) {
        std::size_t n = k < samples.size() ? samples[k] : 0;
        if (k == 1 && samples.size() == 1) n = 2 * (first_n - 1) + 1;
        const FrameResult r = run_frame(*in, n, c);
        if (!r.beta) throw Failure{kNotLiftable, failure_message(r.lift), lift_failure_report(r.lift)};
        if (k == 0) first_n = r.curve.size();
        res.push_back(frenet_residuals(*r.beta));
        grids.push_back({{"samples", r.curve.size()},
                         {"h", res.back().h},
                         {"tangent", res.back().tangent},
                         {"normal", res.back().normal},
                         {"binormal", res.back().binormal}});
    }
    auto order = [&](double coarse, double fine) -> json {
        if (coarse <= 1e-12 || fine <= 0.0) return nullptr;
        return std::log(coarse / fine) / std::log(res[0].h / res[1].h);
    };
    out << json{{"schema", kSchema},
                {"status", "ok"},
                {"grids", grids},
                {"order",
                 {{"tangent", order(res[0].tangent, res[1].tangent)},
                  {"normal", order(res[0].normal, res[1].normal)},
                  {"binormal", order(res[0].binormal, res[1].binormal)}}}}
               .dump(1)
        << '\n';
    return kOk;
}

int cmd_gallery_list(std::ostream& out) {
    for (const auto& e : gallery()) out << summary(e) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frenet, Bishop and Beta frames of space curves", "framecast"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_input = [&](CLI::App* sub, bool with_format) {
        auto* g = sub->add_option("--gallery", cfg.gallery, "gallery entry name");
        auto* d = sub->add_option("--dsl", cfg.dsl, "curve, e.g. \"(cos(t), sin(t), t) t in (0, 6.283)\"");
        auto* f = sub->add_option("--csv", cfg.csv, "CSV file");
        g->excludes(d)->excludes(f);
        d->excludes(f);
        sub->add_option("--samples", cfg.samples, "grid size (check: N or N1,N2)");
        sub->add_option("--tol-kappa", cfg.tol_kappa)->check(CLI::PositiveNumber);
        sub->add_option("--tol-limit", cfg.tol_limit)->check(CLI::PositiveNumber);
        sub->add_option("--tol-c1", cfg.tol_c1)->check(CLI::PositiveNumber);
        if (with_format) {
            sub->add_option("--out", cfg.out, "output directory");
            sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
        }
    };
    auto* frame = app.add_subcommand("frame", "compute Frenet, Bishop and Beta fields");
    add_input(frame, true);
    auto* lift = app.add_subcommand("lift", "lift a normal development to polar form");
    add_input(lift, true);
    auto* check = app.add_subcommand("check", "residuals of the Beta frame equations on two grids");
    add_input(check, false);
    auto* gal = app.add_subcommand("gallery", "built-in curves and developments");
    gal->require_subcommand(1);
    auto* list = gal->add_subcommand("list", "list gallery entries");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (list->parsed()) return cmd_gallery_list(out);
        if (frame->parsed()) return cmd_frame(cfg, out);
        if (lift->parsed()) return cmd_lift(cfg, out);
        if (check->parsed()) return cmd_check(cfg, out);
        return kUsage;
    } catch (const Failure& f) {
        if (!f.report.is_null()) out << f.report.dump() << '\n';
        err << "framecast: " << f.message << '\n';
        return f.code;
    } catch (const ParseError& e) {
        out << error_report("parse", e.what()).dump() << '\n';
        err << "framecast: " << e.what() << '\n';
        return kParse;
    } catch (const PoleError& e) {
        out << error_report("parse", e.what()).dump() << '\n';
        err << "framecast: " << e.what() << '\n';
        return kParse;
    } catch (const NotRegularError& e) {
        out << json{{"schema", kSchema}, {"status", "error"}, {"stage", "arclength"}, {"message", e.what()},
                    {"t", e.t()}}
                   .dump()
            << '\n';
        err << "framecast: " << e.what() << '\n';
        return kNotRegular;
    } catch (const NoBasePointError& e) {
        out << error_report("initial_frame", e.what()).dump() << '\n';
        err << "framecast: " << e.what() << '\n';
        return kNoBasePoint;
    } catch (const std::invalid_argument& e) {
        out << error_report("input", e.what()).dump() << '\n';
        err << "framecast: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        out << error_report("internal", e.what()).dump() << '\n';
        err << "framecast: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace framecast::cli
