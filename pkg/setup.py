import os
import glob
from setuptools import setup, find_packages


# Utility function to read the README file.
def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


# Utility function to create the list of data files
def datafiles(prefix):
    datadir = os.path.join(prefix, 'share', 'relaygate')
    files = []
    for dirname in ['config', 'docs']:
        for f in sorted(glob.glob(os.path.join(dirname, '*'))):
            files.append((os.path.join(datadir, dirname), [f]))
    return files


setup(
    name = "relaygate",
    version = '0.1.0',
    author = "The relaygate authors",
    description = ("Admission control for relaying primary packets at "
                   "cognitive sensor nodes"),
    license = "LGPL",
    packages = find_packages(exclude=['test', 'test.*']),
    long_description=read('README.md'),
    long_description_content_type='text/markdown',
    zip_safe = False,
    include_package_data=True,
    data_files = datafiles(''),
    python_requires='>=3.7',
    install_requires = [
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    test_suite = 'test',
    entry_points = """
        [console_scripts]
        relaygate = relaygate.main:main""",
    classifiers=[
        "License :: OSI Approved :: GNU Library or Lesser General Public License (LGPL)",
    ],
)
