// SPDX-License-Identifier: Apache-2.0
//
// smallscale - spatial fading and autocorrelation statistics for
// linear-track channel measurements
// Copyright (C) 2026 smallscale contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "smallscale/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smallscale/errors.hpp"

namespace smallscale::io {

using nlohmann::json;

namespace {

json parse_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open \"" + path + "\" for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open \"" + path + "\" for writing");
    out << content;
    if (!out)
        throw IoError("failed writing \"" + path + "\"");
}

const json &require(const json &j, const char *key, const std::string &context) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(context + ": missing field \"" + key + "\"");
    return *it;
}

template <class T> T require_as(const json &j, const char *key, const std::string &context) {
    try {
        return require(j, key, context).get<T>();
    } catch (const json::type_error &) {
        throw ValidationError(context + ": field \"" + key + "\" has the wrong type");
    }
}

void check_version(const json &j, const std::string &context) {
    if (require_as<std::string>(j, "version", context) != "v1")
        throw ValidationError(context + ": unsupported version (expected \"v1\")");
}

void check_kind(const json &j, const char *expected, const std::string &context) {
    const std::string kind = require_as<std::string>(j, "kind", context);
    if (kind != expected)
        throw ValidationError(context + ": expected kind \"" + std::string(expected) +
                              "\", got \"" + kind + "\"");
}

FadingFamily parse_family_json(const json &j, const std::string &context) {
    const std::string name = require_as<std::string>(j, "family", context);
    const FamilyKind kind = parse_family(name);
    switch (kind) {
    case FamilyKind::Ricean:
        return FadingFamily::ricean(require_as<double>(j, "k_db", context));
    case FamilyKind::LogNormalDb:
        return FadingFamily::lognormal_db(require_as<double>(j, "sigma_db", context));
    case FamilyKind::Rayleigh:
        return FadingFamily::rayleigh();
    }
    throw ValidationError(context + ": unknown family");
}

json family_to_json(const FadingFamily &family) {
    json j;
    j["family"] = family_name(family.kind);
    if (family.kind == FamilyKind::Ricean)
        j["k_db"] = family.k_db;
    else if (family.kind == FamilyKind::LogNormalDb)
        j["sigma_db"] = family.sigma_db;
    return j;
}

std::string g9(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

} // namespace

TrackScan load_scan(const std::string &path) {
    const json j = parse_json_file(path);
    const std::string ctx = path;
    check_version(j, ctx);
    check_kind(j, "scan", ctx);

    TrackScan scan;
    scan.carrier.frequency_ghz = require_as<double>(j, "carrier_ghz", ctx);
    scan.geometry.num_positions = require_as<std::size_t>(j, "num_positions", ctx);
    scan.geometry.spacing_wavelengths = require_as<double>(j, "spacing_wavelengths", ctx);
    scan.environment = parse_environment(require_as<std::string>(j, "environment", ctx));
    scan.geometry.orientation =
        parse_orientation(require_as<std::string>(j, "orientation", ctx));
    if (j.contains("noise_floor_dbm"))
        scan.noise_floor_dbm = require_as<double>(j, "noise_floor_dbm", ctx);

    const json &records = require(j, "records", ctx);
    if (!records.is_array())
        throw ValidationError(ctx + ": \"records\" must be an array");
    std::size_t index = 0;
    for (const json &rec : records) {
        const std::string rctx = ctx + ": records[" + std::to_string(index) + "]";
        const std::size_t position = require_as<std::size_t>(rec, "position_index", rctx);
        const int azimuth = require_as<int>(rec, "azimuth_deg", rctx);
        Pdp pdp;
        pdp.delay_step_ns = require_as<double>(rec, "delay_step_ns", rctx);
        const json &powers = require(rec, "powers_dbm", rctx);
        if (!powers.is_array() || powers.empty())
            throw ValidationError(rctx + ": \"powers_dbm\" must be a non-empty array");
        pdp.powers_mw.reserve(powers.size());
        for (const json &p : powers) {
            if (!p.is_number())
                throw ValidationError(rctx + ": powers_dbm entries must be numbers");
            pdp.powers_mw.push_back(dbm_to_mw(p.get<double>()));
        }
        pdp.noise_floor_dbm = scan.noise_floor_dbm;
        if (!scan.records.emplace(std::make_pair(position, azimuth), std::move(pdp)).second)
            throw ValidationError(rctx + ": duplicate (position_index=" +
                                  std::to_string(position) +
                                  ", azimuth_deg=" + std::to_string(azimuth) + ")");
        ++index;
    }
    scan.validate();
    return scan;
}

void save_scan(const TrackScan &scan, const std::string &path) {
    scan.validate();
    json j;
    j["version"] = "v1";
    j["kind"] = "scan";
    j["carrier_ghz"] = scan.carrier.frequency_ghz;
    j["num_positions"] = scan.geometry.num_positions;
    j["spacing_wavelengths"] = scan.geometry.spacing_wavelengths;
    j["environment"] = environment_name(scan.environment);
    j["orientation"] = orientation_name(scan.geometry.orientation);
    if (scan.noise_floor_dbm)
        j["noise_floor_dbm"] = *scan.noise_floor_dbm;
    json records = json::array();
    for (const auto &[key, pdp] : scan.records) {
        json rec;
        rec["position_index"] = key.first;
        rec["azimuth_deg"] = key.second;
        rec["delay_step_ns"] = pdp.delay_step_ns;
        json powers = json::array();
        for (double p : pdp.powers_mw) {
            if (!(p > 0.0))
                throw ValidationError("save_scan: powers must be positive to serialize in "
                                      "dBm (thresholded PDPs are in-memory only)");
            powers.push_back(mw_to_dbm(p));
        }
        rec["powers_dbm"] = std::move(powers);
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    write_text_file(path, j.dump(2) + "\n");
}

TrackDocument load_track(const std::string &path) {
    const json j = parse_json_file(path);
    const std::string ctx = path;
    check_version(j, ctx);
    check_kind(j, "track", ctx);

    TrackDocument doc;
    doc.carrier.frequency_ghz = require_as<double>(j, "carrier_ghz", ctx);
    doc.track.spacing_wavelengths = require_as<double>(j, "spacing_wavelengths", ctx);
    doc.track.label = j.contains("label") ? require_as<std::string>(j, "label", ctx) : "";
    const json &amplitudes = require(j, "amplitudes", ctx);
    if (!amplitudes.is_array() || amplitudes.empty())
        throw ValidationError(ctx + ": \"amplitudes\" must be a non-empty array");
    doc.track.amplitudes.reserve(amplitudes.size());
    for (const json &a : amplitudes) {
        if (!a.is_number())
            throw ValidationError(ctx + ": amplitudes entries must be numbers");
        doc.track.amplitudes.push_back(a.get<double>());
    }
    doc.carrier.validate();
    doc.track.validate();
    return doc;
}

void save_track(const TrackDocument &doc, const std::string &path) {
    doc.carrier.validate();
    doc.track.validate();
    json j;
    j["version"] = "v1";
    j["kind"] = "track";
    j["carrier_ghz"] = doc.carrier.frequency_ghz;
    j["spacing_wavelengths"] = doc.track.spacing_wavelengths;
    j["label"] = doc.track.label;
    j["amplitudes"] = doc.track.amplitudes;
    write_text_file(path, j.dump(2) + "\n");
}

SynthFile load_synth_spec(const std::string &path) {
    const json j = parse_json_file(path);
    const std::string ctx = path;
    check_version(j, ctx);
    const std::string kind = require_as<std::string>(j, "kind", ctx);

    if (kind == "track_spec") {
        TrackSynthFile file;
        file.carrier.frequency_ghz = require_as<double>(j, "carrier_ghz", ctx);
        file.spec.geometry.num_positions = require_as<std::size_t>(j, "num_positions", ctx);
        file.spec.geometry.spacing_wavelengths =
            require_as<double>(j, "spacing_wavelengths", ctx);
        if (j.contains("orientation"))
            file.spec.geometry.orientation =
                parse_orientation(require_as<std::string>(j, "orientation", ctx));
        file.spec.marginal = parse_family_json(require(j, "marginal", ctx), ctx + ": marginal");
        const json &ac = require(j, "autocorr", ctx);
        file.spec.autocorr_a = require_as<double>(ac, "a", ctx + ": autocorr");
        file.spec.autocorr_b = require_as<double>(ac, "b", ctx + ": autocorr");
        file.spec.seed = j.contains("seed") ? require_as<std::uint64_t>(j, "seed", ctx) : 0;
        file.carrier.validate();
        file.spec.validate();
        return file;
    }
    if (kind == "scan_spec") {
        ScanSynthFile file;
        file.carrier.frequency_ghz = require_as<double>(j, "carrier_ghz", ctx);
        file.geometry.num_positions = require_as<std::size_t>(j, "num_positions", ctx);
        file.geometry.spacing_wavelengths = require_as<double>(j, "spacing_wavelengths", ctx);
        if (j.contains("orientation"))
            file.geometry.orientation =
                parse_orientation(require_as<std::string>(j, "orientation", ctx));
        file.environment = parse_environment(require_as<std::string>(j, "environment", ctx));
        file.spec.noise_floor_dbm = require_as<double>(j, "noise_floor_dbm", ctx);
        if (j.contains("delay_step_ns"))
            file.spec.delay_step_ns = require_as<double>(j, "delay_step_ns", ctx);
        file.spec.seed = j.contains("seed") ? require_as<std::uint64_t>(j, "seed", ctx) : 0;

        const json &taps = require(j, "taps", ctx);
        if (!taps.is_array() || taps.empty())
            throw ValidationError(ctx + ": \"taps\" must be a non-empty array");
        std::size_t tap_index = 0;
        for (const json &t : taps) {
            const std::string tctx = ctx + ": taps[" + std::to_string(tap_index++) + "]";
            TapSpec tap;
            tap.delay_ns = require_as<double>(t, "delay_ns", tctx);
            tap.mean_power_mw = require_as<double>(t, "mean_power_mw", tctx);
            if (t.contains("fading") && !t["fading"].is_null())
                tap.fading = parse_family_json(t["fading"], tctx + ": fading");
            file.spec.taps.push_back(tap);
        }
        const json &angles = require(j, "angles", ctx);
        if (!angles.is_array() || angles.empty())
            throw ValidationError(ctx + ": \"angles\" must be a non-empty array");
        std::size_t angle_index = 0;
        for (const json &a : angles) {
            const std::string actx = ctx + ": angles[" + std::to_string(angle_index++) + "]";
            const int azimuth = require_as<int>(a, "azimuth_deg", actx);
            const json &visible = require(a, "taps", actx);
            if (!visible.is_array())
                throw ValidationError(actx + ": \"taps\" must be an array");
            std::vector<std::size_t> indices;
            for (const json &v : visible)
                indices.push_back(v.get<std::size_t>());
            if (!file.spec.angle_taps.emplace(azimuth, std::move(indices)).second)
                throw ValidationError(actx + ": duplicate azimuth_deg " +
                                      std::to_string(azimuth));
        }
        if (j.contains("tap_autocorr")) {
            const json &ac = j["tap_autocorr"];
            file.spec.tap_autocorr = {require_as<double>(ac, "a", ctx + ": tap_autocorr"),
                                      require_as<double>(ac, "b", ctx + ": tap_autocorr")};
        }
        file.carrier.validate();
        file.geometry.validate();
        file.spec.validate();
        return file;
    }
    throw ValidationError(ctx + ": kind must be \"track_spec\" or \"scan_spec\", got \"" +
                          kind + "\"");
}

void run_synth_spec(const SynthFile &file, std::uint64_t seed, const std::string &out_path) {
    if (const auto *track_file = std::get_if<TrackSynthFile>(&file)) {
        SynthSpec spec = track_file->spec;
        spec.seed = seed;
        save_track({generate_track(spec), track_file->carrier}, out_path);
        return;
    }
    const auto &scan_file = std::get<ScanSynthFile>(file);
    MultipathSpec spec = scan_file.spec;
    spec.seed = seed;
    save_scan(generate_scan(spec, scan_file.geometry, scan_file.carrier,
                            scan_file.environment),
              out_path);
}

TrackMode parse_mode(const std::string &text) {
    if (text == "omni")
        return TrackMode::omnidirectional();
    if (text.rfind("az:", 0) == 0) {
        try {
            std::size_t consumed = 0;
            const int azimuth = std::stoi(text.substr(3), &consumed);
            if (consumed == text.size() - 3)
                return TrackMode::directional(azimuth);
        } catch (const std::exception &) {
            // fall through to the usage error below
        }
    }
    throw UsageError("mode must be \"omni\" or \"az:<degrees>\", got \"" + text + "\"");
}

void write_fading_report(const std::string &path, std::span<const double> r_db,
                         const std::vector<FadingFit> &ranked_fits) {
    if (ranked_fits.size() != 3)
        throw UsageError("write_fading_report: expected fits for all three families");
    const FadingFit *ricean = nullptr, *lognormal = nullptr, *rayleigh = nullptr;
    for (const FadingFit &fit : ranked_fits) {
        switch (fit.family.kind) {
        case FamilyKind::Ricean:
            ricean = &fit;
            break;
        case FamilyKind::LogNormalDb:
            lognormal = &fit;
            break;
        case FamilyKind::Rayleigh:
            rayleigh = &fit;
            break;
        }
    }
    if (ricean == nullptr || lognormal == nullptr || rayleigh == nullptr)
        throw UsageError("write_fading_report: one fit per family required");

    std::vector<double> sorted(r_db.begin(), r_db.end());
    std::sort(sorted.begin(), sorted.end());
    const Ecdf ecdf(sorted);
    const RiceanAmplitude ricean_model(ricean->family.k_db);
    const std::vector<double> ricean_cdf = ricean_model.cdf_rel_db_grid(sorted);

    std::ostringstream out;
    out << "r_db,ecdf,cdf_ricean,cdf_lognormal_db,cdf_rayleigh,ricean_k_db,ricean_mmse,"
           "ricean_ks,lognormal_sigma_db,lognormal_mmse,lognormal_ks,rayleigh_mmse,"
           "rayleigh_ks,best_family\n";
    const std::string constants =
        g9(ricean->family.k_db) + "," + g9(ricean->fit_error) + "," + g9(ricean->ks_stat) +
        "," + g9(lognormal->family.sigma_db) + "," + g9(lognormal->fit_error) + "," +
        g9(lognormal->ks_stat) + "," + g9(rayleigh->fit_error) + "," + g9(rayleigh->ks_stat) +
        "," + family_name(ranked_fits.front().family.kind);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        out << g9(sorted[i]) << ',' << g9(ecdf(sorted[i])) << ',' << g9(ricean_cdf[i]) << ','
            << g9(lognormal_db_cdf(lognormal->family.sigma_db, sorted[i])) << ','
            << g9(rayleigh_cdf_rel_db(sorted[i])) << ',' << constants << '\n';
    }
    write_text_file(path, out.str());
}

void write_autocorr_report(const std::string &path, const AutocorrSeries &series,
                           const DampedCosParams &params,
                           std::optional<double> d_empirical,
                           const CarrierConfig &carrier) {
    series.validate();
    std::ostringstream out;
    out << "lag_wavelengths,lag_cm,rho_empirical,rho_model,a,b,T,d,d_empirical,"
           "extrapolated\n";
    const std::string constants = g9(params.a) + "," + g9(params.b) + "," +
                                  (params.period ? g9(*params.period) : std::string()) + "," +
                                  g9(params.distance) + "," +
                                  (d_empirical ? g9(*d_empirical) : std::string()) + "," +
                                  (params.extrapolated ? "1" : "0");
    for (std::size_t i = 0; i < series.rho.size(); ++i) {
        const double lag = series.lags_wavelengths[i];
        out << g9(lag) << ',' << g9(wavelengths_to_cm(lag, carrier)) << ','
            << g9(series.rho[i]) << ',' << g9(damped_cos(params.a, params.b, lag)) << ','
            << constants << '\n';
    }
    write_text_file(path, out.str());
}

void write_process_report(const std::string &path, const TrackScan &scan,
                          const std::vector<TrackMode> &modes,
                          const ThresholdPolicy &policy) {
    scan.validate();
    std::ostringstream out;
    out << "pointing,position_index,power_mw,amplitude\n";
    for (const TrackMode &mode : modes) {
        const std::string name = mode_name(mode);
        for (std::size_t pos = 0; pos < scan.geometry.num_positions; ++pos) {
            const double power = mode.omni
                                     ? synthesize_omni(scan, pos, policy)
                                     : directional_power(scan, pos, mode.azimuth_deg, policy);
            out << name << ',' << pos << ',' << g9(power) << ',' << g9(voltage_amplitude(power))
                << '\n';
        }
    }
    write_text_file(path, out.str());
}

} // namespace smallscale::io
