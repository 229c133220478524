import logging
import os

import jinja2
import jinja2.meta

from qhowe import exception


class Templater(object):
    """Renders the text artifacts (DOT graphs, CSV tables, check reports)
    from the jinja2 templates shipped with the package

    :param searchpath: the folder holding the templates. If `None`, the
        default search path (/your/site-packages/qhowe/templates) is used.
    """

    log = logging.getLogger("template.Templater")

    def __init__(self, searchpath=None):
        if searchpath is None:
            self.searchpath = os.path.join(
                os.path.realpath(os.path.dirname(__file__)), 'templates')
        else:
            self.searchpath = searchpath
        self.loader = jinja2.FileSystemLoader(searchpath=self.searchpath)
        self.environment = jinja2.Environment(loader=self.loader,
                                              trim_blocks=True,
                                              lstrip_blocks=True,
                                              keep_trailing_newline=True)

    def __str__(self):
        return "Templater at %s" % self.searchpath

    def render(self, template, **kwargs):
        """Renders the template

        :param template: the template file name, e.g. ``crystal.dot.j2``
        :param kwargs: the variables used to fill the template; see
            :class:`qhowe.template.Templater.list_fields`
        :return: the rendered text
        :rtype: string
        """

        try:
            temp = self.environment.get_template(template)
        except jinja2.TemplateNotFound:
            err_msg = "No template named %s in %s" % (template,
                                                      self.searchpath)
            self.log.error(err_msg)
            raise exception.NotFound(err_msg)
        return temp.render(**kwargs)

    def list_fields(self, template):
        """List all the variables a template expects

        :param template: the template file name
        :return: a :class:`set` of variable names
        :rtype: set
        """

        try:
            temp_source = self.environment.loader.get_source(
                self.environment, template)
        except jinja2.TemplateNotFound:
            err_msg = "No template named %s in %s" % (template,
                                                      self.searchpath)
            self.log.error(err_msg)
            raise exception.NotFound(err_msg)
        ast = self.environment.parse(temp_source[0])
        return jinja2.meta.find_undeclared_variables(ast)

    def render_crystal(self, graph):
        """DOT text for a :class:`qhowe.crystal.CrystalGraph`, one rank per
        length layer"""

        ids = dict((S, idx) for idx, S in enumerate(graph.nodes))
        layers = [[(ids[S], str(S)) for S in nodes]
                  for nodes in graph.layers().values()]
        edges = [(ids[S], ids[T], i) for S, i, T in graph.edges]
        return self.render("crystal.dot.j2", n=graph.n, k=graph.k,
                           layers=layers, edges=edges)

    def render_tilting(self, rows):
        """CSV text for a tilting/Weyl multiplicity table

        :param rows: the rows returned by
            :func:`qhowe.characters.tilting_weyl_matrix`
        """

        return self.render("tilting.csv.j2", size=len(rows), rows=rows)

    def render_report(self, reports):
        """Plain text summary of :class:`qhowe.howeverify.CheckReport`
        objects"""

        return self.render("report.txt.j2", reports=reports,
                           passed=sum(1 for r in reports if r.passed),
                           total=len(reports))
