#include "framecast/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "framecast/errors.hpp"

namespace framecast {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Reads a numeric CSV with the given header; returns rows of doubles.
std::vector<std::vector<double>> read_table(std::istream& is, const std::vector<std::string>& header) {
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line);
        if (!have_header) {
            if (cells != header) {
                std::string want;
                for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
                throw ParseError("expected header '" + want + "'", lineno);
            }
            have_header = true;
            continue;
        }
        if (cells.size() != header.size()) throw ParseError("wrong number of columns", lineno);
        std::vector<double> row;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || *end != '\0' || !std::isfinite(v)) throw ParseError("bad number '" + c + "'", lineno);
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("missing header", lineno);
    return rows;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void put(std::ostream& os, const Vec3& v) {
    os << ',' << format_double(v.x()) << ',' << format_double(v.y()) << ',' << format_double(v.z());
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_development_csv(std::ostream& os, const NormalDevelopment& nd) {
    os << "s,k1,k2\n";
    for (std::size_t i = 0; i < nd.size(); ++i)
        os << format_double(nd.s[i]) << ',' << format_double(nd.k[i].x()) << ',' << format_double(nd.k[i].y())
           << '\n';
}

NormalDevelopment read_development_csv(std::istream& is) {
    const auto rows = read_table(is, {"s", "k1", "k2"});
    if (rows.size() < 2) throw ParseError("development needs at least 2 rows", 0);
    NormalDevelopment nd;
    for (const auto& r : rows) {
        if (!nd.s.empty() && !(r[0] > nd.s.back())) throw ParseError("s must increase strictly", nd.s.size() + 2);
        nd.s.push_back(r[0]);
        nd.k.emplace_back(r[1], r[2]);
    }
    return nd;
}

CurveSpec read_sampled_curve_csv(std::istream& is, std::string name) {
    const auto rows = read_table(is, {"t", "x", "y", "z"});
    if (rows.size() < 4) throw ParseError("sampled curve needs at least 4 rows", 0);
    std::vector<double> t;
    std::vector<Vec3> p;
    for (const auto& r : rows) {
        if (!t.empty() && !(r[0] > t.back())) throw ParseError("t must increase strictly", t.size() + 2);
        t.push_back(r[0]);
        p.emplace_back(r[1], r[2], r[3]);
    }
    return CurveSpec::sampled(std::move(t), std::move(p), std::move(name));
}

void write_frenet_csv(std::ostream& os, const std::vector<FrenetSample>& field) {
    os << "s,Tx,Ty,Tz,kappa_f,Nx,Ny,Nz,Bx,By,Bz,tau_f\n";
    for (const auto& f : field) {
        os << format_double(f.s);
        put(os, f.T);
        os << ',' << format_double(f.kappa_f);
        if (f.N_f) {
            put(os, *f.N_f);
            put(os, *f.B_f);
            os << ',' << format_double(*f.tau_f);
        } else {
            os << ",,,,,,,";
        }
        os << '\n';
    }
}

void write_bishop_csv(std::ostream& os, const BishopField& field) {
    os << "s,Tx,Ty,Tz,M1x,M1y,M1z,M2x,M2y,M2z,k1,k2\n";
    for (std::size_t i = 0; i < field.samples.size(); ++i) {
        const auto& b = field.samples[i];
        os << format_double(field.grid[i]);
        put(os, b.T);
        put(os, b.M1);
        put(os, b.M2);
        os << ',' << format_double(b.k1) << ',' << format_double(b.k2) << '\n';
    }
}

void write_lift_csv(std::ostream& os, const PolarLift& lift) {
    os << "s,r_tilde,theta_tilde\n";
    for (std::size_t i = 0; i < lift.theta_tilde.size(); ++i)
        os << format_double(lift.s[i]) << ',' << format_double(lift.r_tilde[i]) << ','
           << format_double(lift.theta_tilde[i]) << '\n';
}

void write_beta_csv(std::ostream& os, const BetaField& beta) {
    os << "s,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa_beta,tau_beta\n";
    for (std::size_t i = 0; i < beta.samples.size(); ++i) {
        const auto& b = beta.samples[i];
        os << format_double(beta.grid[i]);
        put(os, b.T);
        put(os, b.N);
        put(os, b.B);
        os << ',' << format_double(b.kappa) << ',';
        if (b.tau) os << format_double(*b.tau);
        os << '\n';
    }
}

json to_json(const ZeroAnalysis& a, std::optional<bool> c1) {
    const ZeroRecord& z = a.zero;
    json j;
    j["index_range"] = json::array({z.first, z.last});
    j["s0"] = z.s0;
    j["isolated"] = z.isolated;
    j["between_samples"] = z.between_samples;
    j["at_boundary"] = z.at_boundary;
    j["theta_hat_plus"] = opt(a.plus.theta_hat);
    j["theta_hat_minus"] = opt(a.minus.theta_hat);
    j["theta_hat_rot_plus"] = opt(a.plus.theta_hat_rot);
    j["theta_hat_rot_minus"] = opt(a.minus.theta_hat_rot);
    j["theta_plus"] = opt(a.theta_plus.theta);
    j["theta_minus"] = opt(a.theta_minus.theta);
    j["case_tag"] = to_string(a.theta_plus.tag);
    j["case_plus"] = to_string(a.theta_plus.tag);
    j["case_minus"] = to_string(a.theta_minus.tag);
    j["mismatch"] = opt(a.mismatch);
    j["j_offset"] = a.j_offset;
    j["tie_break"] = a.tie_break;
    j["c1"] = c1 ? json(*c1) : json(nullptr);
    return j;
}

json lift_report(const LiftResult& r, bool with_samples) {
    const PolarLift& l = r.lift;
    json j;
    j["schema"] = kSchema;
    j["verdict"] = to_string(l.verdict);
    if (l.failure) {
        json f;
        f["reason"] = l.failure->reason;
        f["zero_index"] = l.failure->zero_index ? json(*l.failure->zero_index) : json(nullptr);
        f["s"] = l.failure->s;
        f["mismatch"] = opt(l.failure->mismatch);
        j["failure"] = f;
    } else {
        j["failure"] = nullptr;
        j["base_index"] = l.base_index;
        j["max_step"] = l.max_step;
    }
    json zeros = json::array();
    for (std::size_t i = 0; i < r.analyses.size(); ++i) {
        std::optional<bool> c1;
        if (i < l.c1_flags.size()) c1 = l.c1_flags[i];
        zeros.push_back(to_json(r.analyses[i], c1));
    }
    j["zeros"] = zeros;
    if (with_samples && l.liftable()) {
        j["samples"] = {{"s", l.s}, {"r_tilde", l.r_tilde}, {"theta_tilde", l.theta_tilde}};
    }
    return j;
}

json frenet_json(const std::vector<FrenetSample>& field) {
    json arr = json::array();
    for (const auto& f : field) {
        arr.push_back({{"s", f.s},
                       {"T", vec(f.T)},
                       {"kappa_f", f.kappa_f},
                       {"N_f", f.N_f ? vec(*f.N_f) : json(nullptr)},
                       {"B_f", f.B_f ? vec(*f.B_f) : json(nullptr)},
                       {"tau_f", opt(f.tau_f)}});
    }
    return arr;
}

json bishop_json(const BishopField& field) {
    json arr = json::array();
    for (std::size_t i = 0; i < field.samples.size(); ++i) {
        const auto& b = field.samples[i];
        arr.push_back({{"s", field.grid[i]}, {"T", vec(b.T)}, {"M1", vec(b.M1)}, {"M2", vec(b.M2)},
                       {"k1", b.k1}, {"k2", b.k2}});
    }
    return {{"base_index", field.base_index},
            {"base_kind", field.base_kind == BaseKind::planar ? "planar" : "nonplanar"},
            {"max_drift", field.max_drift},
            {"samples", arr}};
}

json beta_json(const BetaField& beta) {
    json arr = json::array();
    for (std::size_t i = 0; i < beta.samples.size(); ++i) {
        const auto& b = beta.samples[i];
        arr.push_back({{"s", beta.grid[i]}, {"T", vec(b.T)}, {"N_beta", vec(b.N)}, {"B_beta", vec(b.B)},
                       {"kappa_beta", b.kappa}, {"tau_beta", opt(b.tau)}});
    }
    return {{"base_index", beta.base_index}, {"samples", arr}};
}

json curve_metadata(const ArcLengthCurve& curve) {
    const CurveSpec& spec = curve.source();
    return {{"name", spec.name()},
            {"kind", to_string(spec.kind())},
            {"interpolation", spec.interpolation()},
            {"total_length", curve.total_length()},
            {"samples", curve.size()}};
}

}  // namespace framecast
