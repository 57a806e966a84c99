#include "qh22/cache.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace qh22;

namespace {

Engine& warm(Engine& E)
{
    E.tau_q(Index{0, 0, 1, 0, 0, 2, 2, 2, 0, 0, 0, 0});
    E.tau_q(Index{0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1});
    E.t_q(Index{0, 0, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0});
    return E;
}

std::string dump(const Engine& E)
{
    std::ostringstream os;
    write_cache(os, E);
    return os.str();
}

std::string error_of(const std::string& text, int n = 4)
{
    Engine E(n);
    std::istringstream is(text);
    try {
        read_cache(is, E);
    } catch (const CacheError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("polynomial text round trip")
{
    for (const char* s : {"0", "x", "-x", "8*x^2-2", "11/16+5/8*x", "-7", "46656", "1/3*x^5-x^2+2"})
        CHECK(parse_qpoly(s).str() == s);
    CHECK_THROWS(parse_qpoly("2*y"));
    CHECK_THROWS(parse_qpoly("1+"));
}

TEST_CASE("save then load gives the same store")
{
    Engine A(4);
    warm(A);
    const std::string text = dump(A);
    CHECK(text.rfind(cache_header(4) + "\n", 0) == 0);
    Engine B(4);
    std::istringstream is(text);
    CHECK(read_cache(is, B) == A.cache_size());
    CHECK(B.cache_entries() == A.cache_entries());
    CHECK(dump(B) == text);
}

TEST_CASE("files")
{
    const auto dir = std::filesystem::temp_directory_path() / "qh22_cache_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "c.txt").string();
    std::filesystem::remove(path);

    Engine E(4);
    CHECK(load_cache_file(path, E) == 0);
    save_cache_file(path, E);
    {
        std::ifstream in(path);
        std::string all((std::istreambuf_iterator<char>(in)), {});
        CHECK(all == cache_header(4) + "\n");
    }
    warm(E);
    save_cache_file(path, E);
    Engine F(4);
    CHECK(load_cache_file(path, F) == E.cache_size());
    CHECK(F.cache_entries() == E.cache_entries());
    std::filesystem::remove_all(dir);
}

TEST_CASE("empty input is an empty store")
{
    Engine E(4);
    std::istringstream is("");
    CHECK(read_cache(is, E) == 0);
    CHECK(E.cache_size() == 0);
}

TEST_CASE("corrupted records name their line")
{
    const std::string h = cache_header(4) + "\n";
    const std::string good = "4|0,0,1,0,0|2,2,2,0,0,0,0|1\n";
    CHECK(error_of(h + good).empty());
    CHECK(error_of(h + good + "4|0,0,1,0,0|2,2,2,0,0,0|1\n").find("line 3:") == 0);
    CHECK(error_of(h + "4|0,0,1,0,0|2,2,2,0,0,0,0|1+*x\n").find("line 2:") == 0);
    CHECK(error_of(h + good + good + "garbage\n").find("line 4:") == 0);
    CHECK(error_of(h + "4|0,0,1,0,0|0,2,2,2,0,0,0|1\n").find("not sorted") != std::string::npos);
    CHECK(error_of(h + good + "4|0,0,1,0,0|2,2,2,0,0,0,0|2\n").find("line 3: conflicts") == 0);
}

TEST_CASE("version and dimension are checked")
{
    CHECK(error_of("# qh22-cache 2 n=4\n").find("version") != std::string::npos);
    CHECK(error_of("# qh22-cache 1 n=6\n").find("n=6") != std::string::npos);
    CHECK(error_of("hello\n").find("line 1:") == 0);
    CHECK(error_of(cache_header(4) + "\n6|0,0,0,0,0,0,0|0,0,0,0,0,0,0,0,0|1\n").find("line 2:") == 0);
}

TEST_CASE("warm and cold caches give the same values")
{
    Engine cold(4);
    warm(cold);
    std::istringstream is(dump(cold));
    Engine hot(4);
    read_cache(is, hot);
    for (const Index& I : {Index{0, 0, 3, 0, 0, 2, 2, 0, 0, 0, 0, 0}, Index{0, 0, 1, 0, 0, 2, 2, 2, 0, 0, 0, 0},
                           Index{0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 0, 0}})
        CHECK(hot.tau_q(I) == Engine(4).tau_q(I));
}
