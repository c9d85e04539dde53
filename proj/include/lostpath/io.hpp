#pragma once
/**
 * @file   io.hpp
 * @brief  PathDocument: the JSON file format for paths.
 *
 * @code{.json}
 * {
 *   "version": 1,
 *   "pieces": [
 *     {"type": "segment", "from": [0, 0], "to": [1, 0]},
 *     {"type": "arc", "center": [0, 0], "radius": 1, "start_angle": 0, "end_angle": 3.14, "ccw": true}
 *   ]
 * }
 * @endcode
 *
 * Angles are radians and lengths are circle radii. Numbers are written with
 * 17 significant digits, so parse(serialize(p)) reproduces every coordinate
 * exactly and serialize is byte-stable across a round trip.
 */

#include <lostpath/error.hpp>
#include <lostpath/geom.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lostpath
{
    inline constexpr int kDocumentVersion = 1;

    namespace detail
    {
        inline std::string format_number(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        inline std::string format_point(Point p) { return "[" + format_number(p.x) + ", " + format_number(p.y) + "]"; }

        [[noreturn]] inline void malformed(const std::string& where, const std::string& what)
        {
            throw Error(ErrorCode::ParseError, where + ": " + what);
        }

        inline double read_number(const nlohmann::json& j, const std::string& where)
        {
            if (!j.is_number())
                malformed(where, "expected a number");
            return j.get<double>();
        }

        inline Point read_point(const nlohmann::json& j, const std::string& where)
        {
            if (!j.is_array() || j.size() != 2)
                malformed(where, "expected an array of 2 numbers");
            return Point{read_number(j[0], where + "[0]"), read_number(j[1], where + "[1]")};
        }

        inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where)
        {
            const auto it = obj.find(key);
            if (it == obj.end())
                malformed(where, std::string("missing field \"") + key + "\"");
            return *it;
        }

        inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where)
        {
            for (const auto& item : obj.items())
            {
                if (allowed.count(item.key()) == 0)
                    malformed(where + "." + item.key(), "unknown field");
            }
        }

        inline PathPiece read_piece(const nlohmann::json& j, const std::string& where)
        {
            if (!j.is_object())
                malformed(where, "expected an object");
            const auto& type = field(j, "type", where);
            if (!type.is_string())
                malformed(where + ".type", "expected a string");
            const auto kind = type.get<std::string>();
            if (kind == "segment")
            {
                reject_unknown(j, {"type", "from", "to"}, where);
                return Segment{read_point(field(j, "from", where), where + ".from"),
                               read_point(field(j, "to", where), where + ".to")};
            }
            if (kind == "arc")
            {
                reject_unknown(j, {"type", "center", "radius", "start_angle", "end_angle", "ccw"}, where);
                const auto& ccw = field(j, "ccw", where);
                if (!ccw.is_boolean())
                    malformed(where + ".ccw", "expected true or false");
                return Arc{read_point(field(j, "center", where), where + ".center"),
                           read_number(field(j, "radius", where), where + ".radius"),
                           read_number(field(j, "start_angle", where), where + ".start_angle"),
                           read_number(field(j, "end_angle", where), where + ".end_angle"), ccw.get<bool>()};
            }
            malformed(where + ".type", "unknown piece type \"" + kind + "\" (expected segment or arc)");
        }
    } // namespace detail

    inline std::string serialize_path(const PiecewisePath& c)
    {
        std::string out = "{\n  \"version\": " + std::to_string(kDocumentVersion) + ",\n  \"pieces\": [\n";
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            const auto& p = c.piece(i);
            if (const auto* s = std::get_if<Segment>(&p))
            {
                out += "    {\"type\": \"segment\", \"from\": " + detail::format_point(s->from) +
                       ", \"to\": " + detail::format_point(s->to) + "}";
            }
            else
            {
                const auto& a = std::get<Arc>(p);
                out += "    {\"type\": \"arc\", \"center\": " + detail::format_point(a.center) +
                       ", \"radius\": " + detail::format_number(a.radius) +
                       ", \"start_angle\": " + detail::format_number(a.start_angle) +
                       ", \"end_angle\": " + detail::format_number(a.end_angle) +
                       ", \"ccw\": " + (a.ccw ? "true" : "false") + "}";
            }
            out += i + 1 < c.size() ? ",\n" : "\n";
        }
        out += "  ]\n}\n";
        return out;
    }

    /**
     * @brief Parses a PathDocument.
     *
     * Throws ParseError naming the offending field (e.g. "pieces[2].radius")
     * or the JSON syntax position, and BrokenChain naming the first
     * discontinuity.
     */
    inline PiecewisePath parse_path(const std::string& text)
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error& e)
        {
            throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object())
            detail::malformed("document", "expected an object");
        detail::reject_unknown(doc, {"version", "pieces"}, "document");
        const auto& version = detail::field(doc, "version", "document");
        if (!version.is_number_integer() || version.get<long long>() != kDocumentVersion)
            detail::malformed("version", "expected 1");
        const auto& pieces = detail::field(doc, "pieces", "document");
        if (!pieces.is_array())
            detail::malformed("pieces", "expected an array");

        std::vector<PathPiece> out;
        for (std::size_t i = 0; i < pieces.size(); ++i)
        {
            const std::string where = "pieces[" + std::to_string(i) + "]";
            try
            {
                out.push_back(detail::read_piece(pieces[i], where));
                validate_piece(out.back());
            }
            catch (const Error& e)
            {
                if (e.code() == ErrorCode::ParseError)
                    throw;
                throw Error(e.code(), where + ": " + e.message());
            }
        }
        return PiecewisePath(std::move(out));
    }

    inline PiecewisePath load_path(const std::string& filename)
    {
        std::ifstream in(filename, std::ios::binary);
        if (!in)
            throw Error(ErrorCode::ParseError, "cannot open " + filename);
        std::ostringstream buf;
        buf << in.rdbuf();
        try
        {
            return parse_path(buf.str());
        }
        catch (const Error& e)
        {
            throw Error(e.code(), filename + ": " + e.message());
        }
    }

    inline void save_text(const std::string& filename, const std::string& text)
    {
        std::ofstream out(filename, std::ios::binary);
        if (!out || !(out << text) || !out.flush())
            throw Error(ErrorCode::InvalidArgument, "cannot write " + filename);
    }

    inline void save_path(const std::string& filename, const PiecewisePath& c) { save_text(filename, serialize_path(c)); }
} // namespace lostpath
