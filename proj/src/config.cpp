// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/config.hpp"

#include "aoapla/angles.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <utility>

namespace aoapla::cli {

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

bool known_section(const std::string& name) {
    return name == "scenario" || name == "spoofer" || name == "sweep" || name == "search" ||
           name == "output";
}

SectionMap tokenize(const std::string& text) {
    SectionMap sections;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail("config", "line " + std::to_string(lineno) + ": unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (!known_section(current))
                fail(current, "unknown section (expected scenario, spoofer, sweep, search, output)");
            if (sections.count(current))
                fail(current, "duplicate section");
            sections[current];
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail("config", "line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty())
            fail("config", "line " + std::to_string(lineno) + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(current, "line " + std::to_string(lineno) + ": empty key");
        if (value.empty())
            fail(current + "." + key, "empty value");
        if (!sections[current].emplace(key, value).second)
            fail(current + "." + key, "duplicate key");
    }
    return sections;
}

void check_keys(const SectionMap& sections, const std::string& section,
                std::initializer_list<const char*> allowed) {
    const auto it = sections.find(section);
    if (it == sections.end())
        return;
    for (const auto& [key, value] : it->second) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            fail(section + "." + key, "unknown key");
    }
}

const std::string* find_key(const SectionMap& sections, const std::string& section,
                            const std::string& key) {
    const auto sec = sections.find(section);
    if (sec == sections.end())
        return nullptr;
    const auto kv = sec->second.find(key);
    if (kv == sec->second.end())
        return nullptr;
    return &kv->second;
}

double parse_double(const std::string& path, const std::string& raw) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        fail(path, "not a finite number: '" + raw + "'");
    return v;
}

long long parse_int(const std::string& path, const std::string& raw) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        fail(path, "not an integer: '" + raw + "'");
    return v;
}

std::uint64_t parse_uint64(const std::string& path, const std::string& raw) {
    const char* begin = raw.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || raw.front() == '-')
        fail(path, "not an unsigned integer: '" + raw + "'");
    return v;
}

std::vector<std::string> split(const std::string& raw, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = raw.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(trim(raw.substr(start)));
            return parts;
        }
        parts.push_back(trim(raw.substr(start, pos - start)));
        start = pos + 1;
    }
}

std::vector<double> parse_double_list(const std::string& path, const std::string& raw) {
    std::vector<double> values;
    for (const std::string& part : split(raw, ',')) {
        if (part.empty())
            fail(path, "empty list entry");
        values.push_back(parse_double(path, part));
    }
    return values;
}

// "start:stop:step" expands to an inclusive range; otherwise a comma list.
std::vector<double> parse_values(const std::string& path, const std::string& raw) {
    if (raw.find(':') == std::string::npos)
        return parse_double_list(path, raw);

    const std::vector<std::string> parts = split(raw, ':');
    if (parts.size() != 3)
        fail(path, "ranges take the form start:stop:step");
    const double start = parse_double(path, parts[0]);
    const double stop = parse_double(path, parts[1]);
    const double step = parse_double(path, parts[2]);
    if (!(step > 0.0))
        fail(path, "range step must be > 0");
    if (stop < start)
        fail(path, "range stop must be >= start");

    std::vector<double> values;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        values.push_back(start + step * i);
    return values;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text) {
    const SectionMap sections = tokenize(text);

    check_keys(sections, "scenario",
               {"elements", "spacing-ratio", "theta-u-deg", "snr-db", "sigma2", "snapshots",
                "alpha", "trials", "seed"});
    check_keys(sections, "spoofer",
               {"antennas", "angular-offset-deg", "angles-deg", "gains", "phi-max-deg",
                "phase-redraw"});
    check_keys(sections, "sweep", {"axis", "values"});
    check_keys(sections, "search", {"grid-points", "guard-deg", "tol-rad", "max-iter"});
    check_keys(sections, "output", {"analytic-phase-draws"});

    const auto require = [&](const std::string& section, const std::string& key) {
        const std::string* raw = find_key(sections, section, key);
        if (!raw)
            fail(section + "." + key, "required key is missing");
        return *raw;
    };

    // [scenario]
    const long long elements = parse_int("scenario.elements", require("scenario", "elements"));
    if (elements < 2)
        fail("scenario.elements", "M must be >= 2");
    double spacing = 0.5;
    if (const std::string* raw = find_key(sections, "scenario", "spacing-ratio")) {
        spacing = parse_double("scenario.spacing-ratio", *raw);
        if (!(spacing > 0.0))
            fail("scenario.spacing-ratio", "must be > 0");
    }

    mc::Scenario sc;
    sc.geometry = model::UlaGeometry(static_cast<int>(elements), spacing);

    const double theta_u_deg =
        parse_double("scenario.theta-u-deg", require("scenario", "theta-u-deg"));
    if (!(std::abs(theta_u_deg) < 90.0))
        fail("scenario.theta-u-deg", "must lie in (-90, 90)");
    sc.theta_u = deg2rad(theta_u_deg);

    const std::string* snr_raw = find_key(sections, "scenario", "snr-db");
    const std::string* sigma2_raw = find_key(sections, "scenario", "sigma2");
    if (snr_raw && sigma2_raw)
        fail("scenario.sigma2", "give either snr-db or sigma2, not both");
    if (!snr_raw && !sigma2_raw)
        fail("scenario.snr-db", "required key is missing (or give sigma2)");
    sc.sigma2 = sigma2_raw ? parse_double("scenario.sigma2", *sigma2_raw)
                           : snr_db_to_sigma2(parse_double("scenario.snr-db", *snr_raw));
    if (!(sc.sigma2 > 0.0))
        fail("scenario.sigma2", "must be > 0");

    const long long snapshots = parse_int("scenario.snapshots", require("scenario", "snapshots"));
    if (snapshots < 1 || snapshots > 1000000)
        fail("scenario.snapshots", "K must lie in [1, 1000000]");
    sc.snapshots = static_cast<int>(snapshots);

    if (const std::string* raw = find_key(sections, "scenario", "alpha")) {
        sc.alpha = parse_double("scenario.alpha", *raw);
        if (!(sc.alpha > 0.0 && sc.alpha < 1.0))
            fail("scenario.alpha", "must lie in (0, 1)");
    }
    if (const std::string* raw = find_key(sections, "scenario", "trials")) {
        sc.trials = parse_int("scenario.trials", *raw);
        if (sc.trials < 1 || sc.trials > 0xffffffffLL)
            fail("scenario.trials", "must lie in [1, 2^32 - 1]");
    }
    bool seed_explicit = false;
    if (const std::string* raw = find_key(sections, "scenario", "seed")) {
        sc.seed = parse_uint64("scenario.seed", *raw);
        seed_explicit = true;
    }

    // [search]
    if (const std::string* raw = find_key(sections, "search", "grid-points")) {
        const long long g = parse_int("search.grid-points", *raw);
        if (g < 512 || g > 100000000)
            fail("search.grid-points", "must lie in [512, 1e8]");
        sc.estimator_search.grid_points = static_cast<int>(g);
    }
    if (const std::string* raw = find_key(sections, "search", "guard-deg")) {
        const double g = parse_double("search.guard-deg", *raw);
        if (!(g > 0.0 && g < 90.0))
            fail("search.guard-deg", "must lie in (0, 90)");
        sc.estimator_search.guard_deg = g;
    }
    if (const std::string* raw = find_key(sections, "search", "tol-rad")) {
        const double t = parse_double("search.tol-rad", *raw);
        if (!(t > 0.0))
            fail("search.tol-rad", "must be > 0");
        sc.estimator_search.tol_rad = t;
    }
    if (const std::string* raw = find_key(sections, "search", "max-iter")) {
        const long long m = parse_int("search.max-iter", *raw);
        if (m < 1 || m > 1000000)
            fail("search.max-iter", "must lie in [1, 1e6]");
        sc.estimator_search.max_iter = static_cast<int>(m);
    }

    // [spoofer]
    std::optional<double> offset_deg;
    if (sections.count("spoofer")) {
        const std::string* angles_raw = find_key(sections, "spoofer", "angles-deg");
        if (angles_raw) {
            if (find_key(sections, "spoofer", "antennas") ||
                find_key(sections, "spoofer", "angular-offset-deg"))
                fail("spoofer.angles-deg",
                     "give either explicit angles or antennas + angular-offset-deg, not both");
            const std::vector<double> deg = parse_double_list("spoofer.angles-deg", *angles_raw);
            std::vector<double> angles(deg.size());
            for (std::size_t i = 0; i < deg.size(); ++i) {
                if (!(std::abs(deg[i]) < 90.0))
                    fail("spoofer.angles-deg", "angles must lie in (-90, 90)");
                angles[i] = deg2rad(deg[i]);
            }
            std::vector<model::cplx> weights;
            if (const std::string* gains_raw = find_key(sections, "spoofer", "gains")) {
                const std::vector<double> gains = parse_double_list("spoofer.gains", *gains_raw);
                if (gains.size() != angles.size())
                    fail("spoofer.gains", "length must match angles-deg");
                for (double g : gains)
                    weights.emplace_back(g, 0.0);
            } else {
                weights.assign(angles.size(),
                               model::cplx(1.0 / static_cast<double>(angles.size()), 0.0));
            }
            try {
                sc.spoofer = model::SpooferConfig(std::move(angles), std::move(weights));
            } catch (const std::invalid_argument& e) {
                fail("spoofer", e.what());
            }
        } else {
            long long antennas = 1;
            if (const std::string* raw = find_key(sections, "spoofer", "antennas")) {
                antennas = parse_int("spoofer.antennas", *raw);
                if (antennas < 1 || antennas > 1000000)
                    fail("spoofer.antennas", "L must lie in [1, 1e6]");
            }
            const double off =
                parse_double("spoofer.angular-offset-deg", require("spoofer", "angular-offset-deg"));
            const double angle_deg = theta_u_deg + off;
            if (!(std::abs(angle_deg) < 90.0))
                fail("spoofer.angular-offset-deg", "theta_u + offset must lie in (-90, 90)");
            sc.spoofer = model::SpooferConfig::co_linear(static_cast<int>(antennas),
                                                         sc.theta_u + deg2rad(off));
            offset_deg = off;
        }

        const std::string* phi_raw = find_key(sections, "spoofer", "phi-max-deg");
        const std::string* redraw_raw = find_key(sections, "spoofer", "phase-redraw");
        if (phi_raw || redraw_raw) {
            mc::PhaseSpreadModel ps;
            if (phi_raw) {
                const double phi = parse_double("spoofer.phi-max-deg", *phi_raw);
                if (!(phi >= 0.0))
                    fail("spoofer.phi-max-deg", "must be >= 0");
                ps.phi_max = deg2rad(phi);
            }
            if (redraw_raw) {
                if (*redraw_raw == "per-trial")
                    ps.redraw = mc::PhaseRedraw::per_trial;
                else if (*redraw_raw == "fixed")
                    ps.redraw = mc::PhaseRedraw::fixed;
                else
                    fail("spoofer.phase-redraw", "expected per-trial or fixed");
            }
            sc.phase_spread = ps;
        }
    }

    // [sweep]
    ParsedConfig out;
    out.scenario = std::move(sc);
    out.spoofer_offset_deg = offset_deg;
    out.seed_from_config = seed_explicit;
    if (sections.count("sweep")) {
        const std::string axis_raw = require("sweep", "axis");
        const std::optional<SweepAxis> axis = axis_from_token(axis_raw);
        if (!axis)
            fail("sweep.axis", "unknown axis '" + axis_raw +
                                   "' (expected snr_db, M, K, L, angular_offset_deg, phi_max_deg)");
        out.axis = axis;
        out.values = parse_values("sweep.values", require("sweep", "values"));
        if (out.values.empty())
            fail("sweep.values", "must be nonempty");
    }

    // [output]
    if (const std::string* raw = find_key(sections, "output", "analytic-phase-draws")) {
        const long long draws = parse_int("output.analytic-phase-draws", *raw);
        if (draws < 1 || draws > 10000000)
            fail("output.analytic-phase-draws", "must lie in [1, 1e7]");
        out.analytic_phase_draws = static_cast<int>(draws);
    }

    try {
        out.scenario.validate();
    } catch (const std::invalid_argument& e) {
        fail("scenario", e.what());
    }
    return out;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

SweepSpec to_sweep_spec(const ParsedConfig& config) {
    if (!config.axis || config.values.empty())
        throw ConfigError("sweep: a [sweep] section with axis and values is required");
    SweepSpec spec;
    spec.axis = *config.axis;
    spec.values = config.values;
    spec.base = config.scenario;
    spec.base_offset_deg = config.spoofer_offset_deg;
    return spec;
}

} // namespace aoapla::cli
