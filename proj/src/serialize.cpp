#include <incidence/serialize.hpp>

namespace incidence {

namespace {
    std::string entry_string(const Json & v, const std::string & where)
    {
        if (! v.is_string())
            throw std::invalid_argument(where + " must be a string");
        return v.get<std::string>();
    }

    const Json & field(const Json & j, const char * key)
    {
        if (! j.contains(key))
            throw std::invalid_argument(std::string("document is missing \"") + key + "\"");
        return j.at(key);
    }

    int param(const Json & j, const char * key)
    {
        const Json & v = field(j, key);
        if (! v.is_number_integer())
            throw std::invalid_argument(std::string("\"") + key + "\" must be an integer");
        return v.get<int>();
    }
}

Document document_from_json(const Json & j)
{
    if (! j.is_object())
        throw std::invalid_argument("document must be a JSON object");
    Params params{param(j, "m"), param(j, "n")};
    validate(params);
    Document doc{Structure(params), {}};
    Structure & s = doc.structure;
    for (auto [key, sort] : {std::pair{"points", Sort::point}, std::pair{"lines", Sort::line}}) {
        const Json & arr = field(j, key);
        if (! arr.is_array())
            throw std::invalid_argument(std::string("\"") + key + "\" must be an array");
        for (const Json & v : arr) {
            std::string name = entry_string(v, std::string("entry of \"") + key + "\"");
            if (name.empty())
                throw std::invalid_argument(std::string("empty name in \"") + key + "\"");
            if (s.find(name))
                throw std::invalid_argument("duplicate name " + name);
            s.add(sort, name);
        }
    }
    const Json & inc = field(j, "incidences");
    if (! inc.is_array())
        throw std::invalid_argument("\"incidences\" must be an array");
    for (const Json & pair : inc) {
        if (! pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("incidence " + pair.dump() + " must be a [point, line] pair");
        std::string pn = entry_string(pair[0], "incidence entry"), ln = entry_string(pair[1], "incidence entry");
        auto p = s.find(pn), l = s.find(ln);
        if (! p)
            throw std::invalid_argument("unknown name " + pn + " in incidence");
        if (! l)
            throw std::invalid_argument("unknown name " + ln + " in incidence");
        if (! s.is_point(*p))
            throw std::invalid_argument(pn + " is not a point");
        if (! s.is_line(*l))
            throw std::invalid_argument(ln + " is not a line");
        s.add_incidence(*p, *l, false);
    }
    if (j.contains("provenance")) {
        const Json & prov = j.at("provenance");
        if (! prov.is_object())
            throw std::invalid_argument("\"provenance\" must be an object");
        for (auto & [name, entry] : prov.items()) {
            auto x = s.find(name);
            if (! x)
                throw std::invalid_argument("unknown name " + name + " in provenance");
            Provenance pv;
            pv.stage = param(entry, "stage");
            std::vector<Id> spawner;
            for (const Json & v : field(entry, "spawner")) {
                std::string sn = entry_string(v, "spawner entry");
                auto y = s.find(sn);
                if (! y)
                    throw std::invalid_argument("unknown name " + sn + " in provenance of " + name);
                spawner.push_back(*y);
            }
            pv.spawner = make_set(std::move(spawner));
            doc.provenance.emplace(*x, std::move(pv));
        }
    }
    return doc;
}

Document parse_document(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    }
    catch (const Json::parse_error & e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
    return document_from_json(j);
}

Structure parse_structure(std::string_view text) { return parse_document(text).structure; }

Json id_set_json(const Structure & s, const IdSet & xs)
{
    Json arr = Json::array();
    for (Id x : xs)
        arr.push_back(s.name(x));
    return arr;
}

Json structure_json(const Structure & s, const std::map<Id, Provenance> * provenance)
{
    Json j;
    j["m"] = s.params().m;
    j["n"] = s.params().n;
    j["points"] = id_set_json(s, s.points());
    j["lines"] = id_set_json(s, s.lines());
    Json inc = Json::array();
    for (auto [p, l] : s.incidences())
        inc.push_back(Json::array({s.name(p), s.name(l)}));
    j["incidences"] = std::move(inc);
    if (provenance && ! provenance->empty()) {
        Json prov = Json::object();
        for (auto & [x, pv] : *provenance)
            if (s.contains(x))
                prov[s.name(x)] = Json{{"spawner", id_set_json(s, pv.spawner)}, {"stage", pv.stage}};
        j["provenance"] = std::move(prov);
    }
    return j;
}

std::string emit_json(const Structure & s, const std::map<Id, Provenance> * provenance)
{
    return structure_json(s, provenance).dump(2) + "\n";
}

std::string emit_dot(const Structure & s)
{
    auto quote = [](const std::string & n) {
        std::string q = "\"";
        for (char ch : n) {
            if (ch == '"' || ch == '\\')
                q += '\\';
            q += ch;
        }
        return q + "\"";
    };
    std::string out = "graph incidence {\n";
    for (Id p : s.points())
        out += "  " + quote(s.name(p)) + " [shape=circle];\n";
    for (Id l : s.lines())
        out += "  " + quote(s.name(l)) + " [shape=box];\n";
    for (auto [p, l] : s.incidences())
        out += "  " + quote(s.name(p)) + " -- " + quote(s.name(l)) + ";\n";
    return out + "}\n";
}

}
