import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tristego import (
    METHOD1,
    METHOD3,
    BitReader,
    Channel,
    InsufficientCapacity,
    MethodId,
    TruncatedStream,
    capacity,
    embed,
    extract,
    frame_payload,
    method2,
    role_for_pixel,
    unframe,
)
from conftest import ALL_METHODS, constant_image, full_capacity_secret, random_image
from reference import (
    reference_capacity,
    reference_embed,
    reference_extract,
)

R, G, B = Channel.RED, Channel.GREEN, Channel.BLUE


class TestMethodId:
    def test_method2_needs_indicator(self):
        with pytest.raises(ValueError):
            MethodId(2)

    @pytest.mark.parametrize("number", [1, 3])
    def test_other_methods_reject_indicator(self, number):
        with pytest.raises(ValueError):
            MethodId(number, Channel.GREEN)

    def test_bad_number(self):
        with pytest.raises(ValueError):
            MethodId(4)


class TestRoles:
    def test_method1_is_constant(self):
        for ordinal in (1, 2, 3, 100):
            assert role_for_pixel(METHOD1, ordinal) == (R, G, B)

    def test_method3_first_three_pixels(self):
        assert role_for_pixel(METHOD3, 1) == (R, G, B)
        assert role_for_pixel(METHOD3, 2) == (G, R, B)
        assert role_for_pixel(METHOD3, 3) == (B, R, G)

    def test_method2_tables(self):
        assert role_for_pixel(method2(R), 5) == (R, G, B)
        assert role_for_pixel(method2(G), 5) == (G, R, B)
        assert role_for_pixel(method2(B), 5) == (B, R, G)

    def test_method3_cycles(self):
        for ordinal in range(1, 100):
            assert role_for_pixel(METHOD3, ordinal) == role_for_pixel(METHOD3, ordinal + 3)

    def test_method3_channel_exposure(self):
        # Red never carries the bigger group, blue never the smaller one,
        # green rotates through all three roles evenly.
        roles = [role_for_pixel(METHOD3, i) for i in range(1, 301)]
        assert all(r.channel2 != R for r in roles)
        assert all(r.channel1 != B for r in roles)
        for field in ("indicator", "channel1", "channel2"):
            assert sum(getattr(r, field) == G for r in roles) == 100

    def test_roles_are_permutations(self):
        for method in ALL_METHODS:
            for ordinal in (1, 2, 3):
                assert set(role_for_pixel(method, ordinal)) == {R, G, B}


class TestFraming:
    def test_empty_secret(self):
        frame = frame_payload(b"")
        assert frame.bit_length == 32
        assert frame.to_bits().tolist() == [0] * 32

    def test_single_byte(self):
        bits = frame_payload(b"\xff").to_bits()
        assert bits.size == 40
        assert "".join(map(str, bits)) == "0" * 31 + "1" + "1" * 8

    def test_unframe_single_byte(self):
        assert unframe("0" * 31 + "1" + "1" * 8) == b"\xff"

    def test_unframe_zero_length_ignores_tail(self):
        assert unframe("0" * 32 + "10110") == b""

    def test_unframe_short_header(self):
        with pytest.raises(TruncatedStream):
            unframe("0" * 31)

    def test_unframe_truncated_body(self):
        with pytest.raises(TruncatedStream):
            unframe("0" * 31 + "1" + "1010")

    @given(st.binary(max_size=64))
    def test_round_trip(self, secret):
        assert unframe(frame_payload(secret).to_bits()) == secret

    def test_reader_tracks_remaining(self):
        reader = BitReader("10100000")
        assert reader.read(3) == 0b101
        assert reader.remaining == 5
        assert reader.read_bytes(0) == b""
        with pytest.raises(TruncatedStream):
            reader.read(6)

    def test_reader_accepts_raw_bit_bytes(self):
        assert BitReader(b"\x01\x00\x01\x01").read(4) == 0b1011
        with pytest.raises(ValueError):
            BitReader(b"\x02\x00")


class TestCapacity:
    def test_single_pixel_low_widths(self):
        img = constant_image(1, 1, (0b100, 200, 200))  # red LSBs 00
        assert capacity(img, METHOD1) == 3

    def test_all_ones_indicator(self):
        img = constant_image(5, 4, (0xFF, 0xFF, 0xFF))
        for method in ALL_METHODS:
            assert capacity(img, method) == 6 * 20

    def test_matches_reference(self, rng):
        for method in ALL_METHODS:
            img = random_image(rng, 13, 7)
            assert capacity(img, method) == reference_capacity(img, method)

    def test_random_cover_density(self, rng):
        img = random_image(rng, 256, 256)
        for method in ALL_METHODS:
            assert capacity(img, method) / (256 * 256) == pytest.approx(4.5, abs=0.05)


class TestEmbedExtract:
    @pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label)
    def test_round_trip_partial_payload(self, rng, method):
        cover = random_image(rng, 32, 32)
        secret = rng.bytes(100)
        result = embed(cover, secret, method)
        assert extract(result.stego, method) == secret
        assert result.bits_embedded == 32 + 800

    @pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label)
    def test_round_trip_full_capacity(self, rng, method):
        cover = random_image(rng, 32, 32)
        secret = full_capacity_secret(rng, cover, method)
        result = embed(cover, secret, method)
        assert extract(result.stego, method) == secret

    def test_empty_secret(self, rng):
        cover = random_image(rng, 16, 16)
        result = embed(cover, b"", METHOD1)
        assert extract(result.stego, METHOD1) == b""
        assert result.bits_embedded == 32
        assert result.stego.red == cover.red
        # pixels past the header region are untouched
        assert result.stego.green.data[result.pixels_used:] == cover.green.data[result.pixels_used:]
        assert result.stego.blue.data[result.pixels_used:] == cover.blue.data[result.pixels_used:]

    def test_insufficient_capacity(self, rng):
        cover = random_image(rng, 4, 4)
        available = capacity(cover, METHOD1)
        with pytest.raises(InsufficientCapacity) as err:
            embed(cover, bytes(1000), METHOD1)
        assert err.value.required_bits == 32 + 8000
        assert err.value.available_bits == available

    def test_exact_capacity_boundary(self, rng):
        cover = random_image(rng, 16, 16)
        secret = full_capacity_secret(rng, cover, METHOD1)
        embed(cover, secret, METHOD1)  # fits
        with pytest.raises(InsufficientCapacity):
            embed(cover, secret + b"x", METHOD1)

    @pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label)
    def test_indicator_plane_untouched(self, rng, method):
        cover = random_image(rng, 24, 24)
        secret = full_capacity_secret(rng, cover, method)
        stego = embed(cover, secret, method).stego
        for ordinal in range(1, cover.pixel_count + 1):
            ch = role_for_pixel(method, ordinal).indicator
            assert stego.plane(ch).data[ordinal - 1] == cover.plane(ch).data[ordinal - 1]

    def test_deterministic(self, rng):
        cover = random_image(rng, 16, 16)
        secret = rng.bytes(50)
        a = embed(cover, secret, METHOD3)
        b = embed(cover, secret, METHOD3)
        assert a.stego == b.stego and a.pixels_used == b.pixels_used

    def test_method2_red_equals_method1(self, rng):
        cover = random_image(rng, 16, 16)
        secret = rng.bytes(80)
        assert embed(cover, secret, method2(R)).stego == embed(cover, secret, METHOD1).stego

    def test_cover_not_mutated(self, rng):
        cover = random_image(rng, 8, 8)
        snapshot = cover.to_array().copy()
        embed(cover, rng.bytes(10), METHOD3)
        assert np.array_equal(cover.to_array(), snapshot)

    def test_wrong_indicator_never_crashes(self, rng):
        cover = random_image(rng, 32, 32)
        secret = rng.bytes(200)
        stego = embed(cover, secret, method2(G)).stego
        try:
            recovered = extract(stego, method2(B))
        except TruncatedStream:
            return
        assert isinstance(recovered, bytes)
        assert recovered != secret

    def test_extract_all_zero_image(self):
        img = constant_image(8, 8, (0, 0, 0))
        assert extract(img, METHOD1) == b""

    def test_extract_tiny_image_truncated(self):
        with pytest.raises(TruncatedStream):
            extract(constant_image(2, 2, (0, 0, 0)), METHOD1)


class TestHandWorkedExample:
    """All-zero 4x4 cover, method 1, secret 0xff, worked out by hand.

    Every indicator byte is zero, so each pixel takes 1 bit in green and
    2 in blue. The 40 framed bits are 31 zeros, then the header's final 1,
    then eight 1s.
    """

    def expected_planes(self):
        green = [0] * 16
        blue = [0] * 16
        blue[10] = blue[11] = blue[12] = 0b11  # bits 31-32, 34-35, 37-38
        green[11] = green[12] = green[13] = 1  # bits 33, 36, 39
        return green, blue

    def test_exact_stego_bytes(self):
        cover = constant_image(4, 4, (0, 0, 0))
        result = embed(cover, b"\xff", METHOD1)
        green, blue = self.expected_planes()
        assert list(result.stego.red.data) == [0] * 16
        assert list(result.stego.green.data) == green
        assert list(result.stego.blue.data) == blue
        assert result.bits_embedded == 40
        # the stream dies right after pixel 14's green group
        assert result.pixels_used == 14
        assert extract(result.stego, METHOD1) == b"\xff"


class TestAgainstReference:
    """The vectorized engine must match the straight-line implementation."""

    @pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label)
    def test_embed_identical(self, rng, method):
        for width, height in ((1, 40), (7, 5), (16, 16), (33, 9)):
            cover = random_image(rng, width, height)
            secret = rng.bytes(min(12, max(0, (capacity(cover, method) - 32) // 8)))
            mine = embed(cover, secret, method)
            ref_stego, ref_bits, ref_pixels = reference_embed(cover, secret, method)
            assert mine.stego == ref_stego
            assert mine.bits_embedded == ref_bits
            assert mine.pixels_used == ref_pixels

    @pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label)
    def test_extract_identical(self, rng, method):
        cover = random_image(rng, 16, 16)
        secret = full_capacity_secret(rng, cover, method)
        stego = embed(cover, secret, method).stego
        assert extract(stego, method) == reference_extract(stego, method) == secret

    @settings(max_examples=25, deadline=None)
    @given(
        data=st.data(),
        width=st.integers(4, 12),
        height=st.integers(4, 12),
        method_index=st.integers(0, len(ALL_METHODS) - 1),
    )
    def test_round_trip_property(self, data, width, height, method_index):
        method = ALL_METHODS[method_index]
        seed = data.draw(st.integers(0, 2**32 - 1))
        rng = np.random.default_rng(seed)
        cover = random_image(rng, width, height)
        max_bytes = max(0, (capacity(cover, method) - 32) // 8)
        secret = data.draw(st.binary(max_size=max_bytes))
        result = embed(cover, secret, method)
        ref_stego, _, _ = reference_embed(cover, secret, method)
        assert result.stego == ref_stego
        assert extract(result.stego, method) == secret
