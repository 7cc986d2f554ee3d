// Command-line front end for the encrypted-domain reversible data hiding
// toolkit: key generation, image encryption and difference-expansion
// embedding, ciphertext recoding, and statistics.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lwedh/analysis.hpp"
#include "lwedh/bits.hpp"
#include "lwedh/container.hpp"
#include "lwedh/de_sbed.hpp"
#include "lwedh/errors.hpp"
#include "lwedh/image.hpp"
#include "lwedh/lwe.hpp"
#include "lwedh/params.hpp"
#include "lwedh/pkr_er.hpp"
#include "lwedh/rng.hpp"

namespace {

using namespace lwedh;

Rng make_rng(const std::optional<std::uint64_t>& seed) {
    return seed ? Rng(*seed) : Rng::from_entropy();
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f)
        throw FormatError("write failed: " + path);
}

std::optional<int> parse_h_fid(const std::string& text) {
    if (text == "inf" || text == "INF")
        return std::nullopt;
    int v = 0;
    try {
        std::size_t pos = 0;
        v = std::stoi(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw CryptoError("--h-fid must be a non-negative integer or 'inf'");
    }
    if (v < 0 || v > 255)
        throw CryptoError("--h-fid must lie in [0, 255] or be 'inf'");
    return v;
}

void check_digest(const std::array<std::uint8_t, 8>& expected,
                  const std::array<std::uint8_t, 8>& actual) {
    if (expected != actual)
        throw FormatError("container was produced under a different key "
                          "(digest " + io::digest_hex(actual) + ", expected " +
                          io::digest_hex(expected) + ")");
}

// Every ciphertext scalar c in a container (either scheme), for the
// entropy/histogram modes. Dispatches on the scheme byte of the header.
std::vector<std::uint32_t> container_scalars(const std::string& path,
                                             std::uint32_t& q_out,
                                             std::string& digest_out) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path);
    char header[7];
    f.read(header, 7);
    if (f.gcount() != 7)
        throw FormatError("unexpected end of file");
    f.seekg(0);
    std::vector<std::uint32_t> scalars;
    if (header[6] == 0) {
        const auto ei = io::load_image_container(f);
        q_out = ei.params.q;
        digest_out = io::digest_hex(ei.key_digest);
        scalars.reserve(ei.pairs.size() * 16);
        for (const auto& pair : ei.pairs) {
            for (const auto& ct : pair.ch)
                scalars.push_back(ct.c);
            for (const auto& ct : pair.cl)
                scalars.push_back(ct.c);
        }
    } else {
        const auto bc = io::load_bitstream_container(f);
        q_out = bc.params.q;
        digest_out = io::digest_hex(bc.key_digest);
        scalars.reserve(bc.cts.size());
        for (const auto& ct : bc.cts)
            scalars.push_back(ct.c);
    }
    return scalars;
}

struct KeygenArgs {
    std::uint32_t n = 240;
    std::optional<std::uint32_t> q;
    std::optional<std::uint32_t> d;
    double alpha = 6.0e-4;
    double epsilon = 0.1999;
    std::string out_secret, out_public;
    std::optional<std::uint64_t> seed;
};

void run_keygen(const KeygenArgs& a) {
    LweParams params;
    params.n = a.n;
    params.q = a.q ? *a.q
                   : min_prime_in_range(static_cast<std::uint64_t>(a.n) * a.n,
                                        2ull * a.n * a.n);
    params.d = a.d ? *a.d : public_dim_lower_bound(a.n, params.q, a.epsilon);
    params.alpha = a.alpha;
    params.epsilon = a.epsilon;

    const auto check = validate(params);
    for (const auto& w : check.warnings)
        std::cerr << "warning: " << w << '\n';
    if (!check.ok()) {
        std::string msg = "invalid parameters:";
        for (const auto& e : check.errors)
            msg += " " + e + ";";
        throw CryptoError(msg);
    }

    Rng rng = make_rng(a.seed);
    const auto sk = sk_gen(params, rng);
    const auto pk = pk_gen(params, sk, rng);
    const auto digest = io::key_digest(pk);
    io::save_public_key(a.out_public, pk);
    io::save_secret_key(a.out_secret, {sk, digest});
    std::cout << "n=" << params.n << " q=" << params.q << " d=" << params.d
              << " alpha=" << params.alpha << " digest=" << io::digest_hex(digest)
              << '\n';
}

struct EncryptImageArgs {
    std::string public_key, in, out, h_fid = "10";
    std::optional<std::uint64_t> seed;
};

void run_encrypt_image(const EncryptImageArgs& a) {
    const auto pk = io::load_public_key(a.public_key);
    const auto img = io::read_pgm(a.in);
    Rng rng = make_rng(a.seed);
    auto ei = sbed::encrypt_image(pk, img, parse_h_fid(a.h_fid), rng);
    ei.key_digest = io::key_digest(pk);
    io::save_image_container(a.out, ei);
    const auto capacity = ei.capacity();
    std::cout << "pairs=" << ei.pair_count() << " capacity_bits=" << capacity
              << " er_bpp="
              << static_cast<double>(capacity) /
                     (static_cast<double>(ei.width) * ei.height)
              << '\n';
}

struct DeEmbedArgs {
    std::string public_key, in, payload, out;
    bool crc = false;
    std::optional<std::uint64_t> seed;
};

void run_de_embed(const DeEmbedArgs& a) {
    const auto pk = io::load_public_key(a.public_key);
    auto ei = io::load_image_container(a.in);
    check_digest(ei.key_digest, io::key_digest(pk));
    const auto bits = unpack_bits(read_file(a.payload));
    Rng rng = make_rng(a.seed);
    const auto marked = sbed::embed_image(pk, ei, bits, rng, a.crc);
    io::save_image_container(a.out, marked);
    std::cout << "embedded_bits=" << marked.payload_bits
              << " capacity_bits=" << ei.capacity() << '\n';
}

struct DeRecoverArgs {
    std::string public_key, in, out;
    std::optional<std::uint64_t> seed;
};

void run_de_recover(const DeRecoverArgs& a) {
    const auto pk = io::load_public_key(a.public_key);
    const auto ei = io::load_image_container(a.in);
    check_digest(ei.key_digest, io::key_digest(pk));
    Rng rng = make_rng(a.seed);
    const auto restored = sbed::recover_image_encrypted(pk, ei, rng);
    io::save_image_container(a.out, restored);
    std::cout << "recovered_pairs=" << ei.payload_bits << '\n';
}

struct DeExtractCtArgs {
    std::string in, out;
};

void run_de_extract_ct(const DeExtractCtArgs& a) {
    const auto ei = io::load_image_container(a.in);
    io::BitstreamContainer bc;
    bc.params = ei.params;
    bc.key_digest = ei.key_digest;
    bc.cts = sbed::extract_bits_encrypted(ei);
    io::save_bitstream_container(a.out, bc);
    std::cout << "extracted_cts=" << bc.cts.size() << '\n';
}

struct DecodeArgs {
    std::string secret_key, in, out_marked, out_recovered, out_payload;
};

void run_decode(const DecodeArgs& a) {
    const auto skf = io::load_secret_key(a.secret_key);
    const auto ei = io::load_image_container(a.in);
    check_digest(skf.pk_digest, ei.key_digest);
    if (skf.key.params != ei.params)
        throw CryptoError("key and container parameters disagree");
    const auto res = sbed::user_decode(skf.key, ei);
    io::write_pgm(res.marked, a.out_marked);
    io::write_pgm(res.recovered, a.out_recovered);
    write_file(a.out_payload, pack_bits(res.payload));
    std::cout << "payload_bits=" << res.payload.size() << '\n';
}

struct PkrEncryptArgs {
    std::string secret_key, public_key, in_bits, out;
    std::uint32_t n_bits = 1;
    std::optional<std::uint64_t> seed;
};

void run_pkr_encrypt(const PkrEncryptArgs& a) {
    const auto skf = io::load_secret_key(a.secret_key);
    const auto pk = io::load_public_key(a.public_key);
    const auto digest = io::key_digest(pk);
    check_digest(skf.pk_digest, digest);
    const auto bits = unpack_bits(read_file(a.in_bits));
    const auto step = pkr::q_step(pk.params, a.n_bits);

    Rng rng = make_rng(a.seed);
    io::BitstreamContainer bc;
    bc.params = pk.params;
    bc.key_digest = digest;
    io::PekBlock pek;
    pek.q_step = step;
    pek.n_bits = a.n_bits;
    for (auto bit : bits) {
        const auto ct = encrypt_bounded(pk, skf.key, bit, step, rng);
        const auto entry = pkr::pek_gen(skf.key, ct, a.n_bits);
        bc.cts.push_back(ct);
        pek.gammas.push_back(static_cast<std::int8_t>(entry.gamma));
    }
    bc.pek = std::move(pek);
    io::save_bitstream_container(a.out, bc);
    std::cout << "ciphertexts=" << bc.cts.size()
              << " capacity_bits=" << bc.cts.size() * a.n_bits << '\n';
}

struct PkrEmbedArgs {
    std::string in, payload, out;
};

void run_pkr_embed(const PkrEmbedArgs& a) {
    auto bc = io::load_bitstream_container(a.in);
    if (!bc.pek)
        throw CryptoError("container carries no recoding key; cannot embed");
    const auto bits = unpack_bits(read_file(a.payload));
    const std::uint32_t n_bits = bc.pek->n_bits;
    const std::size_t chunks = (bits.size() + n_bits - 1) / n_bits;
    if (chunks > bc.cts.size())
        throw CryptoError("payload exceeds container capacity");

    for (std::size_t i = 0; i < bc.cts.size(); ++i) {
        std::uint32_t value = 0;
        for (std::uint32_t b = 0; b < n_bits; ++b) {
            const std::size_t k = i * n_bits + b;
            if (k < bits.size())
                value |= static_cast<std::uint32_t>(bits[k]) << b;
        }
        const pkr::PekEntry entry{bc.pek->gammas[i], bc.pek->q_step, n_bits};
        bc.cts[i] = pkr::pkr_embed(bc.params, bc.cts[i],
                                   entry, pkr::Payload::from_value(value, n_bits));
    }
    // The recoding key is single-use: drop it so the marked container
    // cannot be recoded a second time by accident.
    bc.pek.reset();
    io::save_bitstream_container(a.out, bc);
    std::cout << "embedded_bits=" << bits.size() << '\n';
}

struct PkrExtractArgs {
    std::string secret_key, in, out_bits;
    std::optional<std::uint32_t> n_bits;
};

void run_pkr_extract(const PkrExtractArgs& a) {
    const auto skf = io::load_secret_key(a.secret_key);
    const auto bc = io::load_bitstream_container(a.in);
    check_digest(skf.pk_digest, bc.key_digest);
    if (skf.key.params != bc.params)
        throw CryptoError("key and container parameters disagree");
    std::uint32_t n_bits;
    if (a.n_bits)
        n_bits = *a.n_bits;
    else if (bc.pek)
        n_bits = bc.pek->n_bits;
    else
        throw CryptoError("--N required: container carries no recoding key");

    std::vector<std::uint8_t> bits;
    bits.reserve(bc.cts.size() * n_bits);
    for (const auto& ct : bc.cts) {
        const auto payload = pkr::pkr_extract(skf.key, ct, n_bits);
        bits.insert(bits.end(), payload.bits.begin(), payload.bits.end());
    }
    write_file(a.out_bits, pack_bits(bits));
    std::cout << "extracted_bits=" << bits.size() << '\n';
}

struct PkrDecryptArgs {
    std::string secret_key, in, out_bits;
};

void run_pkr_decrypt(const PkrDecryptArgs& a) {
    const auto skf = io::load_secret_key(a.secret_key);
    const auto bc = io::load_bitstream_container(a.in);
    check_digest(skf.pk_digest, bc.key_digest);
    if (skf.key.params != bc.params)
        throw CryptoError("key and container parameters disagree");
    std::vector<std::uint8_t> bits;
    bits.reserve(bc.cts.size());
    for (const auto& ct : bc.cts)
        bits.push_back(static_cast<std::uint8_t>(pkr::pkr_decrypt(skf.key, ct)));
    write_file(a.out_bits, pack_bits(bits));
    std::cout << "decrypted_bits=" << bits.size() << '\n';
}

struct StatsArgs {
    std::string mode, csv;
    std::vector<std::string> inputs;
    std::uint32_t bins = 64;
};

void run_stats(const StatsArgs& a) {
    std::ofstream csv(a.csv);
    if (!csv)
        throw FormatError("cannot open " + a.csv + " for writing");

    if (a.mode == "entropy" || a.mode == "hist") {
        if (a.inputs.empty())
            throw CryptoError("at least one container input required");
        std::vector<std::uint32_t> scalars;
        std::uint32_t q = 0;
        std::string digest = "-";
        for (const auto& path : a.inputs) {
            std::uint32_t qi = 0;
            std::string di;
            auto s = container_scalars(path, qi, di);
            if (q == 0) {
                q = qi;
                digest = di;
            } else if (q != qi) {
                throw CryptoError("containers use different moduli");
            }
            scalars.insert(scalars.end(), s.begin(), s.end());
        }
        if (a.mode == "entropy") {
            const double h = stats::entropy(scalars, q);
            const stats::MetricRow rows[] = {{"entropy", digest, h}};
            stats::write_metrics_csv(csv, rows);
            std::cout << "entropy=" << h << " samples=" << scalars.size() << '\n';
        } else {
            auto hist = stats::Histogram::regular(q, a.bins);
            for (auto s : scalars)
                hist.add(s);
            stats::write_histogram_csv(csv, hist);
            std::cout << "samples=" << hist.total() << " bins=" << a.bins << '\n';
        }
        return;
    }
    if (a.mode == "gamma") {
        if (a.inputs.size() != 1)
            throw CryptoError("gamma mode takes exactly one container");
        const auto bc = io::load_bitstream_container(a.inputs[0]);
        if (!bc.pek)
            throw CryptoError("container carries no recoding key");
        std::vector<pkr::PekEntry> entries;
        entries.reserve(bc.pek->gammas.size());
        for (auto g : bc.pek->gammas)
            entries.push_back({g, bc.pek->q_step, bc.pek->n_bits});
        const double frac = stats::gamma_balance(entries);
        const stats::MetricRow rows[] = {
            {"gamma_balance", io::digest_hex(bc.key_digest), frac}};
        stats::write_metrics_csv(csv, rows);
        std::cout << "gamma_balance=" << frac << '\n';
        return;
    }
    if (a.mode == "psnr" || a.mode == "ssim") {
        if (a.inputs.size() != 2)
            throw CryptoError(a.mode + " mode takes exactly two images");
        const auto ref = io::read_pgm(a.inputs[0]);
        const auto img = io::read_pgm(a.inputs[1]);
        const double v = a.mode == "psnr" ? stats::psnr(ref, img) : stats::ssim(ref, img);
        const stats::MetricRow rows[] = {{a.mode, "-", v}};
        stats::write_metrics_csv(csv, rows);
        std::cout << a.mode << '=' << v << '\n';
        return;
    }
    throw CryptoError("unknown stats mode '" + a.mode +
                      "' (entropy|hist|gamma|psnr|ssim)");
}

struct BoundArgs {
    std::uint32_t n = 240;
    std::optional<std::uint32_t> q;
    std::optional<std::uint32_t> d;
    double alpha = 6.0e-4;
    double epsilon = 0.1999;
    std::uint32_t n_bits = 1;
};

void run_bound(const BoundArgs& a) {
    LweParams params;
    params.n = a.n;
    params.q = a.q ? *a.q
                   : min_prime_in_range(static_cast<std::uint64_t>(a.n) * a.n,
                                        2ull * a.n * a.n);
    params.d = a.d ? *a.d : public_dim_lower_bound(a.n, params.q, a.epsilon);
    params.alpha = a.alpha;
    params.epsilon = a.epsilon;
    std::cout << "q=" << params.q << " d=" << params.d
              << " q_step=" << pkr::q_step(params, a.n_bits)
              << " alpha_min=" << alpha_security_floor(params.n, params.q)
              << " error_bound=" << pkr::error_bound(params, a.n_bits) << '\n';
}

void add_seed(CLI::App* cmd, std::optional<std::uint64_t>& seed) {
    cmd->add_option("--seed", seed, "deterministic seed (default: OS entropy)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible data hiding in the LWE-encrypted domain"};
    app.require_subcommand(1);

    auto kg = std::make_shared<KeygenArgs>();
    auto* keygen = app.add_subcommand("keygen", "generate a key pair");
    keygen->add_option("--n", kg->n, "secret dimension");
    keygen->add_option("--q", kg->q, "modulus (default: min prime in [n^2, 2n^2))");
    keygen->add_option("--d", kg->d, "public dimension (default: lower bound)");
    keygen->add_option("--alpha", kg->alpha, "noise width");
    keygen->add_option("--epsilon", kg->epsilon, "public dimension slack");
    keygen->add_option("--out-secret", kg->out_secret, "secret key file")->required();
    keygen->add_option("--out-public", kg->out_public, "public key file")->required();
    add_seed(keygen, kg->seed);
    keygen->callback([kg] { run_keygen(*kg); });

    auto ei = std::make_shared<EncryptImageArgs>();
    auto* encrypt_image = app.add_subcommand("encrypt-image",
                                             "encrypt a PGM image bitplane-wise");
    encrypt_image->add_option("--public-key", ei->public_key)->required();
    encrypt_image->add_option("--in", ei->in, "input PGM")->required();
    encrypt_image->add_option("--out", ei->out, "output container")->required();
    encrypt_image->add_option("--h-fid", ei->h_fid, "fidelity cap on |h| or 'inf'");
    add_seed(encrypt_image, ei->seed);
    encrypt_image->callback([ei] { run_encrypt_image(*ei); });

    auto de = std::make_shared<DeEmbedArgs>();
    auto* de_embed = app.add_subcommand("de-embed",
                                        "embed payload bits into an encrypted image");
    de_embed->add_option("--public-key", de->public_key)->required();
    de_embed->add_option("--in", de->in, "input container")->required();
    de_embed->add_option("--payload-file", de->payload, "payload bytes")->required();
    de_embed->add_option("--out", de->out, "output container")->required();
    de_embed->add_flag("--crc", de->crc, "append a CRC-32 of the payload");
    add_seed(de_embed, de->seed);
    de_embed->callback([de] { run_de_embed(*de); });

    auto dr = std::make_shared<DeRecoverArgs>();
    auto* de_recover = app.add_subcommand("de-recover",
                                          "undo embedding without the secret key");
    de_recover->add_option("--public-key", dr->public_key)->required();
    de_recover->add_option("--in", dr->in)->required();
    de_recover->add_option("--out", dr->out)->required();
    add_seed(de_recover, dr->seed);
    de_recover->callback([dr] { run_de_recover(*dr); });

    auto dx = std::make_shared<DeExtractCtArgs>();
    auto* de_extract = app.add_subcommand("de-extract-ct",
                                          "extract embedded-bit ciphertexts");
    de_extract->add_option("--in", dx->in)->required();
    de_extract->add_option("--out", dx->out, "ciphertext sequence container")->required();
    de_extract->callback([dx] { run_de_extract_ct(*dx); });

    auto dc = std::make_shared<DecodeArgs>();
    auto* decode = app.add_subcommand("decode",
                                      "decrypt a container into marked and "
                                      "recovered images plus payload");
    decode->add_option("--secret-key", dc->secret_key)->required();
    decode->add_option("--in", dc->in)->required();
    decode->add_option("--out-marked", dc->out_marked)->required();
    decode->add_option("--out-recovered", dc->out_recovered)->required();
    decode->add_option("--out-payload", dc->out_payload)->required();
    decode->callback([dc] { run_decode(*dc); });

    auto pe = std::make_shared<PkrEncryptArgs>();
    auto* pkr_encrypt = app.add_subcommand("pkr-encrypt",
                                           "bounded-encrypt a bit file and derive "
                                           "the recoding key");
    pkr_encrypt->add_option("--secret-key", pe->secret_key)->required();
    pkr_encrypt->add_option("--public-key", pe->public_key)->required();
    pkr_encrypt->add_option("--in-bits", pe->in_bits, "plaintext bytes")->required();
    pkr_encrypt->add_option("--out", pe->out)->required();
    pkr_encrypt->add_option("--N", pe->n_bits, "payload bits per ciphertext");
    add_seed(pkr_encrypt, pe->seed);
    pkr_encrypt->callback([pe] { run_pkr_encrypt(*pe); });

    auto pm = std::make_shared<PkrEmbedArgs>();
    auto* pkr_embed = app.add_subcommand("pkr-embed",
                                         "recode ciphertexts with payload bits "
                                         "(public operation)");
    pkr_embed->add_option("--in", pm->in)->required();
    pkr_embed->add_option("--payload-file", pm->payload)->required();
    pkr_embed->add_option("--out", pm->out)->required();
    pkr_embed->callback([pm] { run_pkr_embed(*pm); });

    auto px = std::make_shared<PkrExtractArgs>();
    auto* pkr_extract = app.add_subcommand("pkr-extract",
                                           "recover payload bits from a marked "
                                           "container");
    pkr_extract->add_option("--secret-key", px->secret_key)->required();
    pkr_extract->add_option("--in", px->in)->required();
    pkr_extract->add_option("--out-bits", px->out_bits)->required();
    pkr_extract->add_option("--N", px->n_bits, "payload bits per ciphertext");
    pkr_extract->callback([px] { run_pkr_extract(*px); });

    auto pd = std::make_shared<PkrDecryptArgs>();
    auto* pkr_decrypt = app.add_subcommand("pkr-decrypt",
                                           "decrypt a ciphertext sequence to bits");
    pkr_decrypt->add_option("--secret-key", pd->secret_key)->required();
    pkr_decrypt->add_option("--in", pd->in)->required();
    pkr_decrypt->add_option("--out-bits", pd->out_bits)->required();
    pkr_decrypt->callback([pd] { run_pkr_decrypt(*pd); });

    auto st = std::make_shared<StatsArgs>();
    auto* stats_cmd = app.add_subcommand("stats", "metrics over containers or images");
    stats_cmd->add_option("--mode", st->mode, "entropy|hist|gamma|psnr|ssim")->required();
    stats_cmd->add_option("--inputs", st->inputs, "input files")->required();
    stats_cmd->add_option("--csv", st->csv, "output CSV")->required();
    stats_cmd->add_option("--bins", st->bins, "histogram bins");
    stats_cmd->callback([st] { run_stats(*st); });

    auto bd = std::make_shared<BoundArgs>();
    auto* bound = app.add_subcommand("bound", "print the analytic error bound");
    bound->add_option("--n", bd->n);
    bound->add_option("--q", bd->q);
    bound->add_option("--d", bd->d);
    bound->add_option("--alpha", bd->alpha);
    bound->add_option("--epsilon", bd->epsilon);
    bound->add_option("--N", bd->n_bits);
    bound->callback([bd] { run_bound(*bd); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 3;
    } catch (const CryptoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
