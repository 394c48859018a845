import pytest

from config.settings import Settings, validate_environment


def test_defaults_are_valid():
    assert Settings.validate()
    assert validate_environment()


def test_condition_alphabet(monkeypatch):
    monkeypatch.setattr(Settings, 'COND_ALPHABET', '0, 1,2')
    assert Settings.condition_alphabet() == [0, 1, 2]


@pytest.mark.parametrize("attribute, value, message", [
    ('MAX_STEPS', -1, "KREALIZE_MAX_STEPS"),
    ('POLE_DEPTH', -1, "KREALIZE_POLE_DEPTH"),
    ('COND_ALPHABET', '', "is empty"),
    ('COND_ALPHABET', 'a,b', "comma separated"),
    ('LOG_LEVEL', 'LOUD', "Unknown LOG_LEVEL"),
])
def test_invalid_configuration(monkeypatch, attribute, value, message):
    monkeypatch.setattr(Settings, attribute, value)
    with pytest.raises(ValueError, match=message):
        Settings.validate()
    assert not validate_environment()
