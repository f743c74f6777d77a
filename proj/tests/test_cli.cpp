#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef VKLAB_CLI_PATH
#error "VKLAB_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

RunResult run_cli(const std::string& args) {
    const std::string out = "/tmp/vklab_test_stdout.txt";
    const std::string err = "/tmp/vklab_test_stderr.txt";
    const std::string cmd =
        std::string(VKLAB_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.stdout_text = slurp(out);
    r.stderr_text = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("nv-limit run writes a convergent CSV and reproduces byte-identically") {
    spit("/tmp/vklab_nv.json",
         R"({"a":[0.5],"density":0.5,"V":[25,50,100,200,400],"tolerance":1e-2})");
    const RunResult first =
        run_cli("nv-limit --config /tmp/vklab_nv.json --out /tmp/vklab_nv_a.csv");
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text.find("PASS") != std::string::npos);

    const std::string body = slurp("/tmp/vklab_nv_a.csv");
    CHECK(body.rfind("V,N,value_re,value_im,limit_re,limit_im,abs_error\n", 0) == 0);
    CHECK(body.find("\n400,200,") != std::string::npos);

    const RunResult second =
        run_cli("nv-limit --config /tmp/vklab_nv.json --out /tmp/vklab_nv_b.csv");
    CHECK(second.exit_code == 0);
    CHECK(slurp("/tmp/vklab_nv_b.csv") == body);
}

TEST_CASE("psd-check emits the one-line record") {
    spit("/tmp/vklab_psd.json",
         R"({"params":{"alphas":[0.3],"betas":[0.2],"gamma":0.1},)"
         R"("frame":{"dim_plus":3,"dim_minus":3},"m":40,"seed":7,"tolerance":1e-8})");
    const RunResult r =
        run_cli("psd-check --config /tmp/vklab_psd.json --out /tmp/vklab_psd.csv");
    CHECK(r.exit_code == 0);
    const std::string body = slurp("/tmp/vklab_psd.csv");
    CHECK(body.rfind("seed,m,min_eig,pass\n", 0) == 0);
    CHECK(body.find("\n7,40,") != std::string::npos);

    // min_eig must clear the -tol*m bar
    std::istringstream rows(body);
    std::string header, record;
    std::getline(rows, header);
    std::getline(rows, record);
    const auto last_comma = record.rfind(',');
    const auto second_last = record.rfind(',', last_comma - 1);
    const double min_eig =
        std::stod(record.substr(second_last + 1, last_comma - second_last - 1));
    CHECK(min_eig >= -4e-7);
    CHECK(record.substr(last_comma + 1) == "1");
}

TEST_CASE("missing config fields name the field path and exit 2") {
    spit("/tmp/vklab_bad.json", R"({"a":[0.5],"V":[25,50]})");
    const RunResult r = run_cli("nv-limit --config /tmp/vklab_bad.json");
    CHECK(r.exit_code == 2);
    CHECK(r.stderr_text.find("/density") != std::string::npos);
}

TEST_CASE("invalid JSON exits 2") {
    spit("/tmp/vklab_bad2.json", "{not json");
    const RunResult r = run_cli("nv-limit --config /tmp/vklab_bad2.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("density above one is rejected as a config error") {
    spit("/tmp/vklab_bad3.json", R"({"a":[0.5],"density":1.5,"V":[25,50]})");
    const RunResult r = run_cli("ext-limit --config /tmp/vklab_bad3.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("the sqrt-volume normalization demo fails its tolerance") {
    spit("/tmp/vklab_sph.json",
         R"({"c":-0.5,"rate":1.0,"V":[50,100,200,400],)"
         R"("normalization":"per-sqrt-volume","tolerance":1e-2})");
    const RunResult r = run_cli("spherical --config /tmp/vklab_sph.json");
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("FAIL") != std::string::npos);

    spit("/tmp/vklab_sph2.json", R"({"c":-0.5,"rate":1.0,"V":[50,100,200,400],"tolerance":1e-2})");
    const RunResult ok = run_cli("spherical --config /tmp/vklab_sph2.json");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("character of a diagonal unitary with f(z)=z is the determinant") {
    spit("/tmp/vklab_char.json",
         R"({"params":{"betas":[1.0]},"w":{"kind":"diag","eigenvalues":[[0,1],[-1,0]]}})");
    const RunResult r =
        run_cli("character --config /tmp/vklab_char.json --out /tmp/vklab_char.csv");
    CHECK(r.exit_code == 0);
    const std::string body = slurp("/tmp/vklab_char.csv");
    // det(diag(i, -1)) = -i
    std::istringstream rows(body);
    std::string header, record;
    std::getline(rows, header);
    std::getline(rows, record);
    std::istringstream fields(record);
    std::string re, im;
    std::getline(fields, re, ',');
    std::getline(fields, im, ',');
    CHECK(std::abs(std::stod(re) - 0.0) < 1e-12);
    CHECK(std::abs(std::stod(im) - (-1.0)) < 1e-12);
}

TEST_CASE("character accepts a signature as a comma-separated CLI argument") {
    spit("/tmp/vklab_irr.json", R"({"V":8,"a":[0.5]})");
    const RunResult r = run_cli(
        "character --config /tmp/vklab_irr.json --signature 3,2,1 --out /tmp/vklab_irr.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("signature=(3,2,1)@8") != std::string::npos);

    // same via the config's integer array; the trivial signature gives one
    spit("/tmp/vklab_irr2.json", R"({"signature":[],"V":8,"a":[0.5]})");
    const RunResult r2 =
        run_cli("character --config /tmp/vklab_irr2.json --out /tmp/vklab_irr2.csv");
    CHECK(r2.exit_code == 0);
    const std::string body = slurp("/tmp/vklab_irr2.csv");
    CHECK(body.find("\n1,") != std::string::npos);

    // invalid part list is a config error
    const RunResult bad = run_cli("character --config /tmp/vklab_irr.json --signature 1,2");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("numerical failures exit 3") {
    spit("/tmp/vklab_coarse.json",
         R"({"flows":[{"fields":[{"type":"radial","center":[0,0],"amplitude":-0.4,)"
         R"("plateau_radius":0.2,"support_radius":0.6}],"time":1.0,"steps":32}],)"
         R"("grid":{"box":[-1,-1,1,1],"resolution":8}})");
    const RunResult r = run_cli("diffeo-free-boson --config /tmp/vklab_coarse.json");
    CHECK(r.exit_code == 3);
    CHECK(r.stderr_text.find("refine the grid") != std::string::npos);
}

TEST_CASE("json format wraps the same rows") {
    spit("/tmp/vklab_nvj.json", R"({"a":[0.5],"density":0.5,"V":[25,50]})");
    const RunResult r = run_cli(
        "nv-limit --config /tmp/vklab_nvj.json --format json --out /tmp/vklab_nv.json.out");
    CHECK(r.exit_code == 0);
    const std::string body = slurp("/tmp/vklab_nv.json.out");
    CHECK(body.find("\"rows\"") != std::string::npos);
    CHECK(body.find("\"abs_error\"") != std::string::npos);
}
