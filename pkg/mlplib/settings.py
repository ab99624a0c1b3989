"""
Settings management: extraction defaults and annotated output look.

This file is part of mlp.
"""

import os
import re
import pkgutil
import configparser

from reportlab.lib import colors
from reportlab.lib.colors import Color
from reportlab.lib.fonts import tt2ps

from .error import ConfigError

import logging
logger = logging.getLogger('mlplib.settings')


def get_base_settings():
    """Return `Settings` populated with the shipped defaults."""
    conf = configparser.ConfigParser(interpolation=None)
    conf.read_string(
        pkgutil.get_data('mlplib', 'data/base.ini').decode('utf-8'))
    return Settings(conf)


class Settings(object):
    def __init__(self, config):
        self.config = config

    def __getitem__(self, item):
        return Section(self.config, item)

    def read(self, *files):
        files = [os.fspath(f) for f in files]
        out = self.config.read(files, encoding='utf-8')
        if out != files:
            raise ConfigError("settings file not found: %s"
                % ', '.join(f for f in files if f not in out))

    def ranking_params(self, **overrides):
        """Return `RankingParams` from [extract] and [ranking].

        Keyword arguments not None take precedence over the files.
        """
        from .ranking import RankingParams
        ext = self['extract']
        rnk = self['ranking']
        kwargs = dict(alpha=rnk.alpha, beta=rnk.beta, gamma=rnk.gamma,
            k=ext.k, aggregate=ext.aggregate)
        if rnk.sigma_d is not None:
            kwargs['sigma_d'] = rnk.sigma_d
        if rnk.sigma_s is not None:
            kwargs['sigma_s'] = rnk.sigma_s
        kwargs.update((k, v) for k, v in overrides.items() if v is not None)
        return RankingParams(**kwargs)


sect_hierarchy = {
    'title': 'page',
    'prose': 'page',
    'identifier': 'prose',
    'math': 'prose',
}


class Section(object):
    def __init__(self, config, item):
        self.config = config
        self.item = item

    # [extract]

    @property
    def workers(self):
        rv = self._parse_int('workers')
        if rv < 1:
            raise ConfigError("'workers' in section '%s' must be at least 1"
                % self.item)
        return rv

    @property
    def sort_buffer(self):
        rv = self._parse_int('sort-buffer')
        if rv < 1:
            raise ConfigError(
                "'sort-buffer' in section '%s' must be at least 1"
                % self.item)
        return rv

    @property
    def method(self):
        return self._parse_choices('method',
            ['pattern', 'statistical', 'both'])

    @property
    def k(self):
        return self._parse_int('k')

    @property
    def aggregate(self):
        return self._parse_choices('aggregate', ['max', 'rsum'])

    # [ranking]

    @property
    def alpha(self):
        return self._parse_float('alpha')

    @property
    def beta(self):
        return self._parse_float('beta')

    @property
    def gamma(self):
        return self._parse_float('gamma')

    @property
    def sigma_d(self):
        return self._parse_optional(self._parse_float, 'sigma-d')

    @property
    def sigma_s(self):
        return self._parse_optional(self._parse_float, 'sigma-s')

    # [annotate]

    @property
    def identifier_class(self):
        return self._parse('identifier-class')

    @property
    def related_class(self):
        return self._parse('related-class')

    # pdf look

    @property
    def ttfont(self):
        return self._parse('font')

    @property
    def font_weight(self):
        return self._parse_choices('font-weight', ['normal', 'bold'])

    @property
    def font_style(self):
        return self._parse_choices('font-style', ['normal', 'italic'])

    @property
    def font(self):
        font = self.ttfont
        bold = self.font_weight == 'bold'
        italic = self.font_style == 'italic'
        return tt2ps(font, bold, italic)

    @property
    def font_size(self):
        return self._parse_int('font-size')

    @property
    def line_height(self):
        return self._parse_int('line-height')

    @property
    def color(self):
        return self._parse_color('color')

    @property
    def paragraph_space(self):
        return self._parse_int('paragraph-space')

    @property
    def margin_top(self):
        return self._parse_float('margin-top')

    @property
    def margin_bottom(self):
        return self._parse_float('margin-bottom')

    @property
    def margin_left(self):
        return self._parse_float('margin-left')

    @property
    def margin_right(self):
        return self._parse_float('margin-right')

    def _parse(self, opt):
        sect = self.item
        while sect:
            try:
                return self.config.get(sect, opt)
            except (configparser.NoOptionError, configparser.NoSectionError):
                # option not found: maybe specified in an ancestor?
                sect = sect_hierarchy.get(sect)
            except configparser.Error as e:
                raise ConfigError(str(e))
        else:
            raise ConfigError(
                "no option '%s' in section '%s' or above"
                % (opt, self.item))

    def _parse_optional(self, parser, opt):
        try:
            val = self._parse(opt)
        except ConfigError:
            return None
        if not val.strip():
            return None
        return parser(opt)

    def _parse_int(self, opt):
        val = self._parse(opt)
        try:
            return int(val)
        except ValueError:
            raise ConfigError(
                "bad integer value for '%s' in section '%s': %s"
                    % (opt, self.item, val))

    def _parse_float(self, opt):
        val = self._parse(opt)
        try:
            return float(val)
        except ValueError:
            raise ConfigError(
                "bad float value for '%s' in section '%s': %s"
                    % (opt, self.item, val))

    def _parse_color(self, opt):
        col = self._parse(opt).strip()

        # color like #FFF
        m = re.match('#([0-9a-fA-F]{3}$)', col)
        if m:
            return Color(*[int(c, 16) / 15. for c in m.group(1)])

        # color like #FFFFFF
        m = re.match('#([0-9a-fA-F]{6})$', col)
        if m:
            return Color(
                *[int(m.group(1)[c:c+2], 16) / 255. for c in (0,2,4)])

        # color by name
        rv = getattr(colors, col, None)
        if isinstance(rv, Color):
            return rv
        else:
            raise ConfigError(
                "bad color for '%s' in section '%s': %s"
                    % (opt, self.item, col))

    def _parse_choices(self, opt, choices):
        val = self._parse(opt)
        if val.lower() in choices:
            return val.lower()
        else:
            raise ConfigError(
                "bad value for '%s' in section '%s': %s"
                    % (opt, self.item, val))
