#include "relaycap/experiments.hpp"
#include "relaycap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace relaycap {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string binding_token(const BindingCut& b) {
    switch (b.kind) {
    case BindingCut::Kind::mac:
        return "mac";
    case BindingCut::Kind::tie:
        return "tie";
    case BindingCut::Kind::broadcast:
        return "relay:" + std::to_string(b.relay);
    }
    return "?";
}

bool wants(const SweepSpec& spec, Strategy s) {
    return std::find(spec.strategies.begin(), spec.strategies.end(), s) !=
           spec.strategies.end();
}

Geometry geometry_at(const GeometryTemplate& tpl, double d_sr) {
    Geometry g;
    g.source = {0.0, 0.0};
    g.destination = {tpl.d_sd, 0.0};
    for (double off : tpl.relay_offsets)
        g.relays.push_back({d_sr, off});
    g.path_loss_exponent = tpl.path_loss_exponent;
    g.reference_distance = tpl.reference_distance;
    g.min_distance = tpl.min_distance;
    return g;
}

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> out;
    const auto count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    out.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        out.push_back(start + static_cast<double>(i) * step);
    return out;
}

double interpolate_rho(const std::vector<std::pair<double, double>>& table,
                       double d) {
    if (table.empty())
        throw ValidationError("user_rho table must not be empty");
    if (d <= table.front().first)
        return table.front().second;
    if (d >= table.back().first)
        return table.back().second;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (d <= table[i].first) {
            const auto& [d0, r0] = table[i - 1];
            const auto& [d1, r1] = table[i];
            const double t = (d - d0) / (d1 - d0);
            return r0 + t * (r1 - r0);
        }
    }
    return table.back().second;
}

} // namespace

void SweepSpec::validate() const {
    if (!(step > 0.0))
        throw ValidationError("step must be > 0");
    if (!(start < stop))
        throw ValidationError("start must be < stop");
    if (relay_powers.size() != geom.relay_offsets.size())
        throw ValidationError(
            "relay_powers must match the number of relay offsets");
    if (af_policy.kind == AfPolicy::Kind::carryover) {
        if (!af_policy.carryover)
            throw ValidationError("carryover policy needs a reference sweep");
        if (af_policy.carryover->geom.relay_offsets.size() !=
            geom.relay_offsets.size())
            throw ValidationError(
                "carryover reference must have the same relay count");
        if (!(af_policy.carryover->start < af_policy.carryover->stop))
            throw ValidationError("carryover reference range is empty");
    }
    if (user_rho) {
        for (const auto& [d, rho] : *user_rho)
            if (!(std::abs(rho) <= 1.0))
                throw ValidationError("user_rho values must lie in [-1, 1]");
    }
}

NetworkConfig config_at(const SweepSpec& spec, double d_sr) {
    return config_from_geometry(geometry_at(spec.geom, d_sr),
                                spec.source_power, spec.relay_powers,
                                spec.noise_power);
}

AfGains af_gains_at(const SweepSpec& spec, double d_sr) {
    const NetworkConfig cfg = config_at(spec, d_sr);
    AfGains gains;
    gains.beta.reserve(cfg.relay_count());
    switch (spec.af_policy.kind) {
    case AfPolicy::Kind::max_gain:
        return af_max_gains(cfg);
    case AfPolicy::Kind::capped_by_snr:
        for (std::size_t r = 0; r < cfg.relay_count(); ++r)
            gains.beta.push_back(
                std::min(af_gain_limit(cfg, r), snr(cfg, r).sr));
        return gains;
    case AfPolicy::Kind::fraction:
        for (std::size_t r = 0; r < cfg.relay_count(); ++r)
            gains.beta.push_back(spec.af_policy.fraction *
                                 af_gain_limit(cfg, r));
        return gains;
    case AfPolicy::Kind::carryover: {
        const auto& ref = *spec.af_policy.carryover;
        const double frac = (d_sr - spec.start) / (spec.stop - spec.start);
        const double d_ref = ref.start + frac * (ref.stop - ref.start);
        const NetworkConfig ref_cfg = config_from_geometry(
            geometry_at(ref.geom, d_ref), ref.source_power, ref.relay_powers,
            ref.noise_power);
        for (std::size_t r = 0; r < cfg.relay_count(); ++r)
            gains.beta.push_back(std::min(af_gain_limit(cfg, r),
                                          af_gain_limit(ref_cfg, r)));
        return gains;
    }
    }
    throw ValidationError("unknown AF policy");
}

RateCurve run_sweep(const SweepSpec& spec) {
    spec.validate();
    RateCurve curve;
    for (double d : grid(spec.start, spec.stop, spec.step)) {
        const NetworkConfig cfg = config_at(spec, d);
        RatePoint p;
        p.d_sr = d;
        if (wants(spec, Strategy::direct))
            p.direct = direct_rate(cfg);
        if (wants(spec, Strategy::cutset)) {
            const CutsetResult res = cutset(cfg);
            p.cutset = res.rate;
            p.rho_star = res.rho_star;
            p.binding = res.binding;
        }
        if (wants(spec, Strategy::af)) {
            const AfGains gains = af_gains_at(spec, d);
            p.af = af_rate(cfg, gains);
            p.af_betas = gains.beta;
        }
        if (wants(spec, Strategy::mrc))
            p.mrc = mrc_rate(cfg);
        if (wants(spec, Strategy::parallel))
            p.parallel = parallel_channels_rate(cfg);
        if (spec.user_rho) {
            const double rho = interpolate_rho(*spec.user_rho, d);
            double f = mac_term(cfg, rho);
            for (std::size_t r = 0; r < cfg.relay_count(); ++r)
                f = std::min(f, broadcast_term(cfg, r, rho));
            p.cutset_user_rho = f;
        }
        curve.points.push_back(std::move(p));
    }
    return curve;
}

RelayCountComparison
compare_relay_counts(const SweepSpec& spec,
                     const std::vector<std::size_t>& counts) {
    spec.validate();
    for (std::size_t c : counts)
        if (c < 1 || c > spec.geom.relay_offsets.size())
            throw ValidationError("relay count outside the spec's layout");

    RelayCountComparison cmp;
    cmp.counts = counts;
    cmp.baseline_note =
        "count n keeps the first n relay offsets; the one-relay variant "
        "places its relay at (d_sr, " +
        (spec.geom.relay_offsets.empty()
             ? std::string("?")
             : fmt_g(spec.geom.relay_offsets.front())) +
        ")";

    std::vector<RateCurve> curves;
    for (std::size_t c : counts) {
        SweepSpec reduced = spec;
        reduced.geom.relay_offsets.resize(c);
        reduced.relay_powers.resize(c);
        reduced.strategies = {Strategy::cutset};
        if (reduced.af_policy.carryover) {
            reduced.af_policy.carryover->geom.relay_offsets.resize(c);
            reduced.af_policy.carryover->relay_powers.resize(c);
        }
        curves.push_back(run_sweep(reduced));
    }
    if (curves.empty())
        return cmp;

    for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
        RelayCountComparison::Row row;
        row.d_sr = curves.front().points[i].d_sr;
        for (const RateCurve& c : curves)
            row.cutset.push_back(c.points[i].cutset.value());
        if (row.cutset.size() == 2 && row.cutset.front() > 0.0)
            row.ratio = row.cutset.back() / row.cutset.front();
        cmp.rows.push_back(std::move(row));
    }
    return cmp;
}

std::string to_csv(const RateCurve& curve) {
    std::ostringstream out;
    const bool user_rho_col =
        !curve.points.empty() && curve.points.front().cutset_user_rho.has_value();
    out << "d_sr,direct,cutset,rho_star,binding_cut,af,mrc,parallel";
    if (user_rho_col)
        out << ",cutset_user_rho";
    out << "\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? fmt_g(*v) : std::string();
    };
    for (const RatePoint& p : curve.points) {
        out << fmt_g(p.d_sr) << ',' << cell(p.direct) << ',' << cell(p.cutset)
            << ',' << cell(p.rho_star) << ','
            << (p.binding ? binding_token(*p.binding) : std::string()) << ','
            << cell(p.af) << ',' << cell(p.mrc) << ',' << cell(p.parallel);
        if (user_rho_col)
            out << ',' << cell(p.cutset_user_rho);
        out << "\n";
    }
    return out.str();
}

std::string comparison_to_csv(const RelayCountComparison& cmp) {
    std::ostringstream out;
    out << "# " << cmp.baseline_note << "\n";
    out << "d_sr";
    for (std::size_t c : cmp.counts)
        out << ",cutset_" << c;
    if (cmp.counts.size() == 2)
        out << ",ratio";
    out << "\n";
    for (const auto& row : cmp.rows) {
        out << fmt_g(row.d_sr);
        for (double v : row.cutset)
            out << ',' << fmt_g(v);
        if (cmp.counts.size() == 2)
            out << ',' << (row.ratio ? fmt_g(*row.ratio) : std::string());
        out << "\n";
    }
    return out.str();
}

std::string to_svg(const RateCurve& curve) {
    struct Series {
        const char* name;
        const char* color;
        std::optional<double> RatePoint::* field;
    };
    static const Series series[] = {
        {"direct", "#7f7f7f", &RatePoint::direct},
        {"cutset", "#d62728", &RatePoint::cutset},
        {"af", "#1f77b4", &RatePoint::af},
        {"mrc", "#2ca02c", &RatePoint::mrc},
        {"parallel", "#9467bd", &RatePoint::parallel},
    };

    const double width = 800, height = 500;
    const double ml = 70, mr = 160, mt = 20, mb = 55;
    double xmin = 0, xmax = 1, ymax = 1;
    if (!curve.points.empty()) {
        xmin = curve.points.front().d_sr;
        xmax = curve.points.back().d_sr;
        ymax = 0;
        for (const RatePoint& p : curve.points)
            for (const Series& s : series)
                if (p.*(s.field))
                    ymax = std::max(ymax, *(p.*(s.field)));
        if (ymax <= 0)
            ymax = 1;
        ymax *= 1.05;
    }
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;
    auto px = [&](double d) { return ml + (d - xmin) / xspan * (width - ml - mr); };
    auto py = [&](double v) { return height - mb - v / ymax * (height - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and ticks
    out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
        << width - mr << "\" y2=\"" << height - mb << "\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << height - mb << "\"/>\n";
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double d = xmin + xspan * i / 5.0;
        const double x = px(d);
        out << "<line x1=\"" << x << "\" y1=\"" << height - mb << "\" x2=\""
            << x << "\" y2=\"" << height - mb + 5
            << "\" stroke=\"#333\"/>\n";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", d);
        out << "<text x=\"" << x << "\" y=\"" << height - mb + 20
            << "\" text-anchor=\"middle\">" << buf << "</text>\n";
        const double v = ymax * i / 5.0;
        const double y = py(v);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml
            << "\" y2=\"" << y << "\" stroke=\"#333\"/>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">" << buf << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">d_sr [m]</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (mt + height - mb) / 2 << ")\">rate [bps/Hz]</text>\n";
    out << "</g>\n";

    int legend_row = 0;
    for (const Series& s : series) {
        std::ostringstream pts;
        bool any = false;
        for (const RatePoint& p : curve.points) {
            if (!(p.*(s.field)))
                continue;
            pts << px(p.d_sr) << ',' << py(*(p.*(s.field))) << ' ';
            any = true;
        }
        if (!any)
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.8\" points=\"" << pts.str() << "\"/>\n";
        const double ly = mt + 18 + 20 * legend_row++;
        out << "<line x1=\"" << width - mr + 12 << "\" y1=\"" << ly
            << "\" x2=\"" << width - mr + 40 << "\" y2=\"" << ly
            << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - mr + 48 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333\">"
            << s.name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

SweepSpec high_snr_case_study(std::size_t relay_count) {
    if (relay_count < 1 || relay_count > 2)
        throw ValidationError("case studies support 1 or 2 relays");
    SweepSpec spec;
    spec.geom.d_sd = 1.0;
    spec.geom.relay_offsets = {0.1, -0.1};
    spec.geom.relay_offsets.resize(relay_count);
    spec.start = -0.5;
    spec.stop = 1.5;
    spec.step = 0.01;
    spec.source_power = 0.1;
    spec.relay_powers.assign(relay_count, 0.1);
    spec.noise_power = 1e-6;
    spec.strategies = {Strategy::direct, Strategy::cutset, Strategy::af,
                       Strategy::mrc, Strategy::parallel};
    spec.af_policy.kind = AfPolicy::Kind::max_gain;
    return spec;
}

SweepSpec low_snr_case_study(std::size_t relay_count) {
    if (relay_count < 1 || relay_count > 2)
        throw ValidationError("case studies support 1 or 2 relays");
    SweepSpec spec;
    spec.geom.d_sd = 500.0;
    spec.geom.relay_offsets = {10.0, -10.0};
    spec.geom.relay_offsets.resize(relay_count);
    spec.start = -100.0;
    spec.stop = 600.0;
    spec.step = 5.0;
    spec.source_power = 0.1;
    spec.relay_powers.assign(relay_count, 0.1);
    spec.noise_power = 1e-6;
    spec.strategies = {Strategy::direct, Strategy::cutset, Strategy::af,
                       Strategy::mrc, Strategy::parallel};
    spec.af_policy.kind = AfPolicy::Kind::carryover;
    AfPolicy::CarryoverRef ref;
    const SweepSpec high = high_snr_case_study(relay_count);
    ref.geom = high.geom;
    ref.start = high.start;
    ref.stop = high.stop;
    ref.source_power = high.source_power;
    ref.relay_powers = high.relay_powers;
    ref.noise_power = high.noise_power;
    spec.af_policy.carryover = std::move(ref);
    return spec;
}

} // namespace relaycap
