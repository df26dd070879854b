#include "fairdiv/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fairdiv {

namespace {

using nlohmann::json;

std::vector<Rational> parse_rationals(const json& arr) {
    std::vector<Rational> out;
    for (const auto& v : arr) out.push_back(parse_rational(v.get<std::string>()));
    return out;
}

json rationals_to_json(const std::vector<Rational>& vals) {
    json arr = json::array();
    for (const auto& v : vals) arr.push_back(to_string(v));
    return arr;
}

Measure measure_from_json(const json& obj) {
    return Measure(parse_rationals(obj.at("breakpoints")), parse_rationals(obj.at("densities")));
}

SignedMeasure signed_measure_from_json(const json& obj) {
    SignedMeasure nu;
    nu.breakpoints = parse_rationals(obj.at("breakpoints"));
    nu.densities = parse_rationals(obj.at("densities"));
    nu.validate();
    return nu;
}

Necklace necklace_from_json(const json& obj) {
    Necklace nk;
    nk.thieves = obj.at("r").get<int>();
    if (obj.contains("beads")) {
        nk.beads = BeadString::from_string(obj.at("beads").get<std::string>());
        if (!obj.contains("measures")) {
            nk = discrete_to_continuous(*nk.beads, nk.thieves);
            nk.beads = BeadString::from_string(obj.at("beads").get<std::string>());
            nk.validate();
            return nk;
        }
    }
    if (obj.contains("measures"))
        for (const auto& m : obj.at("measures")) nk.measures.push_back(measure_from_json(m));
    nk.validate();
    return nk;
}

PartitionAllocation allocation_from_json(const json& obj) {
    PartitionAllocation pa;
    pa.cuts = parse_rationals(obj.at("cuts"));
    for (const auto& v : obj.at("f")) pa.allocation.push_back(v.get<int>() - 1); // 1-based on disk
    return pa;
}

} // namespace

Instance parse_instance(std::istream& in) {
    Instance inst;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (obj.contains("necklace"))
            inst.necklace = necklace_from_json(obj.at("necklace"));
        else if (obj.contains("allocation"))
            inst.allocation = allocation_from_json(obj.at("allocation"));
        else if (obj.contains("preference"))
            inst.pref_measures.push_back(signed_measure_from_json(obj.at("preference")));
        else
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected necklace, allocation or preference");
    }
    return inst;
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_instance(in);
}

Instance parse_instance_arg(const std::string& arg, int r_hint) {
    if (arg.rfind("beads:", 0) == 0) {
        std::string spec = arg.substr(6);
        int r = r_hint;
        const auto at = spec.find('@');
        if (at != std::string::npos) {
            r = std::stoi(spec.substr(at + 1));
            spec = spec.substr(0, at);
        }
        Instance inst;
        const BeadString beads = BeadString::from_string(spec);
        inst.necklace = discrete_to_continuous(beads, r);
        return inst;
    }
    return parse_instance_file(arg);
}

std::string necklace_to_json_line(const Necklace& nk) {
    json measures = json::array();
    for (const auto& mu : nk.measures) {
        json m;
        m["breakpoints"] = rationals_to_json(mu.breakpoints);
        m["densities"] = rationals_to_json(mu.densities);
        measures.push_back(m);
    }
    json inner;
    inner["r"] = nk.thieves;
    inner["measures"] = measures;
    if (nk.beads) inner["beads"] = nk.beads->to_letters();
    json obj;
    obj["necklace"] = inner;
    return obj.dump();
}

std::string allocation_to_json_line(const PartitionAllocation& pa) {
    json f = json::array();
    for (int owner : pa.allocation) f.push_back(owner + 1);
    json inner;
    inner["cuts"] = rationals_to_json(pa.cuts);
    inner["f"] = f;
    json obj;
    obj["allocation"] = inner;
    return obj.dump();
}

void write_complex(std::ostream& out, const SimplicialComplex& K) {
    // Order by labels so the output does not depend on internal vertex ids.
    std::vector<std::vector<std::string>> lines;
    for (const auto& facet : K.facets) {
        std::vector<std::string> labels;
        for (int v : facet) labels.push_back(K.vertex_labels.at(v));
        std::sort(labels.begin(), labels.end());
        lines.push_back(std::move(labels));
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (const auto& labels : lines) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            out << (i ? " " : "") << labels[i];
        out << "\n";
    }
}

SimplicialComplex read_complex(std::istream& in) {
    SimplicialComplex K;
    std::map<std::string, int> ids;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        Face face;
        std::string label;
        while (row >> label) {
            auto it = ids.find(label);
            if (it == ids.end()) {
                it = ids.emplace(label, static_cast<int>(K.vertex_labels.size())).first;
                K.vertex_labels.push_back(label);
            }
            face.push_back(it->second);
        }
        if (face.empty()) continue;
        std::sort(face.begin(), face.end());
        face.erase(std::unique(face.begin(), face.end()), face.end());
        K.facets.push_back(face);
    }
    // drop non-maximal lines
    std::vector<Face> maximal;
    for (const auto& f : K.facets) {
        bool dominated = false;
        for (const auto& g : K.facets)
            if (&f != &g && f.size() <= g.size() &&
                std::includes(g.begin(), g.end(), f.begin(), f.end()) && f != g)
                dominated = true;
        if (!dominated) maximal.push_back(f);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    K.facets = maximal;
    K.sort_canonical();
    return K;
}

SimplicialComplex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_complex(in);
}

Graph parse_graph_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("graph spec: expected kind:param");
    const std::string kind = spec.substr(0, colon);
    const int param = std::stoi(spec.substr(colon + 1));
    if (kind == "cube") {
        if (param < 0 || param > 20) throw std::invalid_argument("graph spec: cube:d with 0<=d<=20");
        return Graph::cube(param);
    }
    if (kind == "complete") {
        if (param < 1) throw std::invalid_argument("graph spec: complete:r with r>=1");
        return Graph::complete(param);
    }
    if (kind == "cycle") {
        if (param < 3) throw std::invalid_argument("graph spec: cycle:r with r>=3");
        Graph g;
        g.num_vertices = param;
        for (int v = 0; v < param; ++v) g.add_edge(v, (v + 1) % param);
        return g;
    }
    if (kind == "path") {
        if (param < 1) throw std::invalid_argument("graph spec: path:r with r>=1");
        Graph g;
        g.num_vertices = param;
        for (int v = 0; v + 1 < param; ++v) g.add_edge(v, v + 1);
        return g;
    }
    throw std::invalid_argument("graph spec: unknown kind " + kind);
}

} // namespace fairdiv
