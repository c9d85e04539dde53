#pragma once
/**
 * @file   error.hpp
 * @brief  Exception type shared by every lostpath module.
 */

#include <stdexcept>
#include <string>

namespace lostpath
{
    enum class ErrorCode
    {
        InteriorPoint,
        DegeneratePiece,
        BrokenChain,
        OutOfRange,
        DomainError,
        NotAJunction,
        BadBracket,
        NoFeasiblePoint,
        InvalidArgument,
        ParseError,
    };

    inline const char* to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::InteriorPoint: return "InteriorPoint";
        case ErrorCode::DegeneratePiece: return "DegeneratePiece";
        case ErrorCode::BrokenChain: return "BrokenChain";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NotAJunction: return "NotAJunction";
        case ErrorCode::BadBracket: return "BadBracket";
        case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        }
        return "Unknown";
    }

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string& what)
            : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what)
        {
        }

        [[nodiscard]] ErrorCode code() const noexcept { return code_; }
        /// what() without the leading code name.
        [[nodiscard]] const std::string& message() const noexcept { return message_; }

    private:
        ErrorCode code_;
        std::string message_;
    };
} // namespace lostpath
